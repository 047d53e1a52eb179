#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgstat/graph.hpp"
#include "qgstat/quantize.hpp"

namespace qgstat {

/// Contents of a graph file: {"V": int, "bonds": [[u, v], ...]} plus optional
/// "lengths": [...] and "length_seed": int.
struct GraphFile {
    DirectedGraph graph;
    std::optional<std::vector<double>> lengths;
    std::optional<std::uint64_t> length_seed;
};

std::string graph_to_json(const DirectedGraph& g, const BondLengths* lengths = nullptr,
                          std::optional<std::uint64_t> length_seed = std::nullopt);

/// Parses a graph document. Bonds must already be in canonical order; the
/// 4-regularity checks are left to validate_graph().
GraphFile parse_graph_json(std::string_view text);

/// Reads and parses a graph file; with `validate` the graph must also pass
/// validate_graph() (GraphError otherwise).
GraphFile load_graph_file(const std::filesystem::path& path, bool validate = true);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace qgstat
