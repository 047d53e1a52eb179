#include "qgstat/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace qgstat {

DirectedGraph::DirectedGraph(int vertex_count, std::vector<Bond> bonds)
    : vertex_count_(vertex_count), bonds_(std::move(bonds)) {
    if (vertex_count_ < 1) throw GraphError("graph needs at least one vertex");
    for (const Bond& b : bonds_) {
        if (b.origin < 0 || b.origin >= vertex_count_ || b.terminus < 0 || b.terminus >= vertex_count_) {
            std::ostringstream msg;
            msg << "bond (" << b.origin << "," << b.terminus << ") has an endpoint outside 0.."
                << vertex_count_ - 1;
            throw GraphError(msg.str());
        }
    }
    // Parallel bonds are indistinguishable, so a plain sort realizes the
    // (origin, terminus, multiplicity rank) ordering.
    std::sort(bonds_.begin(), bonds_.end());

    out_.resize(static_cast<std::size_t>(vertex_count_));
    in_.resize(static_cast<std::size_t>(vertex_count_));
    for (BondId b = 0; b < bond_count(); ++b) {
        out_[static_cast<std::size_t>(bonds_[static_cast<std::size_t>(b)].origin)].push_back(b);
        in_[static_cast<std::size_t>(bonds_[static_cast<std::size_t>(b)].terminus)].push_back(b);
    }
}

namespace {

std::vector<bool> reachable(const DirectedGraph& g, bool forward) {
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        const VertexId v = frontier.front();
        frontier.pop();
        for (BondId b : forward ? g.out_bonds(v) : g.in_bonds(v)) {
            const VertexId w = forward ? g.terminus(b) : g.origin(b);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                frontier.push(w);
            }
        }
    }
    return seen;
}

}  // namespace

ValidationReport validate_graph(const DirectedGraph& g) {
    ValidationReport report;
    const int V = g.vertex_count();

    report.bond_count_matches = g.bond_count() == 2 * V;
    if (!report.bond_count_matches) {
        report.problems.push_back("bond count " + std::to_string(g.bond_count()) + " != 2V = " +
                                  std::to_string(2 * V));
    }

    report.regular = true;
    for (VertexId v = 0; v < V; ++v) {
        const auto outs = g.out_bonds(v).size();
        const auto ins = g.in_bonds(v).size();
        if (outs != 2 || ins != 2) {
            report.regular = false;
            report.problems.push_back("vertex " + std::to_string(v) + " has in-degree " + std::to_string(ins) +
                                      " and out-degree " + std::to_string(outs));
        }
    }
    if (report.regular) {
        report.ports.resize(static_cast<std::size_t>(V));
        for (VertexId v = 0; v < V; ++v) {
            auto& ports = report.ports[static_cast<std::size_t>(v)];
            std::copy_n(g.in_bonds(v).begin(), 2, ports.in_bonds.begin());
            std::copy_n(g.out_bonds(v).begin(), 2, ports.out_bonds.begin());
        }
    }

    const auto fwd = reachable(g, true);
    const auto bwd = reachable(g, false);
    report.strongly_connected = std::all_of(fwd.begin(), fwd.end(), [](bool x) { return x; }) &&
                                std::all_of(bwd.begin(), bwd.end(), [](bool x) { return x; });
    if (!report.strongly_connected) report.problems.push_back("graph is not strongly connected");
    return report;
}

std::vector<VertexPorts> require_valid(const DirectedGraph& g) {
    ValidationReport report = validate_graph(g);
    if (!report.ok()) {
        std::string msg = "invalid 4-regular directed graph:";
        for (const auto& p : report.problems) msg += "\n  " + p;
        throw GraphError(msg);
    }
    return std::move(report.ports);
}

DirectedGraph build_binary_graph(int p, int r) {
    if (p < 1 || p % 2 == 0) throw GraphError("binary graph needs an odd positive p, got " + std::to_string(p));
    if (r < 1 || r > 24) throw GraphError("binary graph needs 1 <= r <= 24, got " + std::to_string(r));
    const long long V = static_cast<long long>(p) << r;
    if (V > (1 << 24)) throw GraphError("binary graph too large");
    const int n = static_cast<int>(V);

    std::vector<Bond> bonds;
    bonds.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        const int base = i < n / 2 ? 2 * i : 2 * i - n;
        bonds.push_back({i, base});
        bonds.push_back({i, base + 1});
    }
    return DirectedGraph(n, std::move(bonds));
}

DirectedGraph orient_four_regular(int vertex_count, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    if (vertex_count < 1) throw GraphError("graph needs at least one vertex");
    const auto V = static_cast<std::size_t>(vertex_count);

    // adjacency: (edge id, other endpoint); a loop is listed twice at its vertex
    std::vector<std::vector<std::pair<int, VertexId>>> adj(V);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto [u, w] = edges[static_cast<std::size_t>(e)];
        if (u < 0 || w < 0 || u >= vertex_count || w >= vertex_count) {
            throw GraphError("edge endpoint out of range");
        }
        adj[static_cast<std::size_t>(u)].emplace_back(e, w);
        adj[static_cast<std::size_t>(w)].emplace_back(e, u);
    }
    for (std::size_t v = 0; v < V; ++v) {
        if (adj[v].size() != 4) {
            throw GraphError("vertex " + std::to_string(v) + " has undirected degree " +
                             std::to_string(adj[v].size()) + ", expected 4");
        }
    }

    // Hierholzer: every maximal forward run is a closed trail, so orienting
    // edges in traversal order balances in- and out-degree everywhere.
    std::vector<bool> used(edges.size(), false);
    std::vector<std::size_t> cursor(V, 0);
    std::vector<Bond> bonds;
    bonds.reserve(edges.size());
    std::vector<VertexId> stack{0};
    while (!stack.empty()) {
        const VertexId v = stack.back();
        auto& next = cursor[static_cast<std::size_t>(v)];
        const auto& nbrs = adj[static_cast<std::size_t>(v)];
        while (next < nbrs.size() && used[static_cast<std::size_t>(nbrs[next].first)]) ++next;
        if (next == nbrs.size()) {
            stack.pop_back();
            continue;
        }
        const auto [e, w] = nbrs[next];
        used[static_cast<std::size_t>(e)] = true;
        bonds.push_back({v, w});
        stack.push_back(w);
    }
    if (bonds.size() != edges.size()) throw GraphError("undirected graph is not connected");

    return DirectedGraph(vertex_count, std::move(bonds));
}

std::vector<std::pair<VertexId, VertexId>> undirected_edges(const DirectedGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(g.bonds().size());
    for (const Bond& b : g.bonds()) edges.emplace_back(std::min(b.origin, b.terminus), std::max(b.origin, b.terminus));
    return edges;
}

}  // namespace qgstat
