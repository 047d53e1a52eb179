#include "qgstat/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qgstat {

using nlohmann::json;

std::string graph_to_json(const DirectedGraph& g, const BondLengths* lengths, std::optional<std::uint64_t> length_seed) {
    json doc;
    doc["V"] = g.vertex_count();
    json bonds = json::array();
    for (const Bond& b : g.bonds()) bonds.push_back({b.origin, b.terminus});
    doc["bonds"] = std::move(bonds);
    if (lengths != nullptr) doc["lengths"] = lengths->values();
    if (length_seed) doc["length_seed"] = *length_seed;
    return doc.dump() + "\n";
}

GraphFile parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw GraphError(std::string("graph file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("V") || !doc.contains("bonds")) {
        throw GraphError("graph file must be an object with \"V\" and \"bonds\"");
    }
    if (!doc["V"].is_number_integer()) throw GraphError("\"V\" must be an integer");
    const int V = doc["V"].get<int>();
    std::vector<Bond> bonds;
    for (const json& entry : doc["bonds"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() || !entry[1].is_number_integer()) {
            throw GraphError("each bond must be a [origin, terminus] integer pair");
        }
        bonds.push_back({entry[0].get<int>(), entry[1].get<int>()});
    }
    for (std::size_t i = 1; i < bonds.size(); ++i) {
        if (bonds[i] < bonds[i - 1]) {
            throw GraphError("bonds are not in canonical (origin, terminus) order at index " + std::to_string(i));
        }
    }
    GraphFile file{DirectedGraph(V, std::move(bonds)), std::nullopt, std::nullopt};
    if (doc.contains("lengths")) {
        auto lengths = doc["lengths"].get<std::vector<double>>();
        if (static_cast<int>(lengths.size()) != file.graph.bond_count()) {
            throw GraphError("\"lengths\" must have one entry per bond");
        }
        file.lengths = std::move(lengths);
    }
    if (doc.contains("length_seed")) file.length_seed = doc["length_seed"].get<std::uint64_t>();
    return file;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

GraphFile load_graph_file(const std::filesystem::path& path, bool validate) {
    GraphFile file = parse_graph_json(read_text_file(path));
    if (validate) require_valid(file.graph);
    return file;
}

}  // namespace qgstat
