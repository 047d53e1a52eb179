#include "qgstat/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qgstat {

Eigen::Matrix2cd dft_vertex_matrix() {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << h, h, h, -h;
    return m;
}

BondScattering::BondScattering(DirectedGraph graph) : graph_(std::move(graph)), ports_(require_valid(graph_)) {
    const int B = graph_.bond_count();
    const Eigen::Matrix2cd sigma = dft_vertex_matrix();
    matrix_ = Eigen::MatrixXcd::Zero(B, B);
    for (const VertexPorts& p : ports_) {
        for (int row = 0; row < 2; ++row) {
            for (int col = 0; col < 2; ++col) {
                matrix_(p.out_bonds[static_cast<std::size_t>(row)], p.in_bonds[static_cast<std::size_t>(col)]) =
                    sigma(row, col);
            }
        }
    }
}

int BondScattering::transition_sign(BondId from, BondId to) const {
    const VertexId v = graph_.terminus(from);
    if (graph_.origin(to) != v) return 0;
    const VertexPorts& p = ports_[static_cast<std::size_t>(v)];
    const int in_port = p.in_bonds[0] == from ? 0 : 1;
    const int out_port = p.out_bonds[0] == to ? 0 : 1;
    return dft_sign(out_port, in_port);
}

BondLengths::BondLengths(std::vector<double> lengths) : lengths_(std::move(lengths)) {
    for (double x : lengths_) {
        if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("bond lengths must be positive and finite");
    }
    std::vector<double> sorted = lengths_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("bond lengths must be pairwise distinct");
    }
}

BondLengths sample_bond_lengths(const DirectedGraph& g, std::uint64_t seed, double low, double high) {
    if (!(low > 0.0) || !(high > low) || !std::isfinite(high)) {
        throw std::invalid_argument("length interval must satisfy 0 < low < high");
    }
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> dist(low, high);
    std::vector<double> lengths;
    lengths.reserve(static_cast<std::size_t>(g.bond_count()));
    while (static_cast<int>(lengths.size()) < g.bond_count()) {
        const double x = dist(engine);
        if (std::find(lengths.begin(), lengths.end(), x) == lengths.end()) lengths.push_back(x);
    }
    return BondLengths(std::move(lengths));
}

void evolution_operator_into(const BondScattering& S, const BondLengths& L, double k, Eigen::MatrixXcd& out) {
    const int B = S.size();
    if (L.size() != B) throw std::invalid_argument("bond lengths and scattering matrix disagree in size");
    out.resize(B, B);
    for (int b = 0; b < B; ++b) out.col(b) = S.matrix().col(b) * std::polar(1.0, k * L[b]);
}

Eigen::MatrixXcd evolution_operator(const BondScattering& S, const BondLengths& L, double k) {
    Eigen::MatrixXcd U;
    evolution_operator_into(S, L, k, U);
    return U;
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
    return (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).norm();
}

}  // namespace qgstat
