#pragma once

#include <array>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgstat {

using VertexId = int;
using BondId = int;

/// Directed bond b = (origin, terminus).
struct Bond {
    VertexId origin = 0;
    VertexId terminus = 0;

    bool is_loop() const { return origin == terminus; }
    friend auto operator<=>(const Bond&, const Bond&) = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// In/out bond ids at one vertex, ascending by bond id. A 2x2 vertex
/// scattering matrix is indexed by these positions: column = position in
/// `in_bonds`, row = position in `out_bonds`.
struct VertexPorts {
    std::array<BondId, 2> in_bonds{-1, -1};
    std::array<BondId, 2> out_bonds{-1, -1};
};

/// Directed multigraph with bonds stored in canonical (origin, terminus) order.
///
/// Construction only checks that endpoints are in range; 4-regularity and
/// strong connectivity are checked by validate_graph(). Immutable afterwards.
class DirectedGraph {
public:
    DirectedGraph(int vertex_count, std::vector<Bond> bonds);

    int vertex_count() const { return vertex_count_; }
    int bond_count() const { return static_cast<int>(bonds_.size()); }

    const std::vector<Bond>& bonds() const { return bonds_; }
    const Bond& bond(BondId b) const { return bonds_.at(static_cast<std::size_t>(b)); }
    VertexId origin(BondId b) const { return bond(b).origin; }
    VertexId terminus(BondId b) const { return bond(b).terminus; }

    std::span<const BondId> out_bonds(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
    std::span<const BondId> in_bonds(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.bonds_ == b.bonds_;
    }

private:
    int vertex_count_;
    std::vector<Bond> bonds_;
    std::vector<std::vector<BondId>> out_;
    std::vector<std::vector<BondId>> in_;
};

struct ValidationReport {
    bool regular = false;             // every vertex 2-in / 2-out
    bool bond_count_matches = false;  // B == 2V
    bool strongly_connected = false;
    std::vector<VertexPorts> ports;   // filled only when `regular`
    std::vector<std::string> problems;

    bool ok() const { return regular && bond_count_matches && strongly_connected; }
};

ValidationReport validate_graph(const DirectedGraph& g);

/// Throws GraphError listing the problems unless validate_graph(g).ok().
std::vector<VertexPorts> require_valid(const DirectedGraph& g);

/// Binary graph on V = p 2^r vertices: i -> {2i, 2i+1} (mod V). p = 1 gives
/// the binary de Bruijn graphs.
DirectedGraph build_binary_graph(int p, int r);

/// Orient an undirected 4-regular connected multigraph along an Euler circuit
/// so that every vertex ends up with in-degree 2 and out-degree 2. A loop
/// edge (u, u) contributes 2 to the undirected degree.
DirectedGraph orient_four_regular(int vertex_count, const std::vector<std::pair<VertexId, VertexId>>& edges);

/// Undirected shadow of a directed graph, one edge per bond.
std::vector<std::pair<VertexId, VertexId>> undirected_edges(const DirectedGraph& g);

}  // namespace qgstat
