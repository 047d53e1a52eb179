#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qgstat/graph.hpp"

namespace qgstat {

using Complex = std::complex<double>;

/// 2x2 DFT vertex scattering matrix (1/sqrt 2) [[1, 1], [1, -1]].
Eigen::Matrix2cd dft_vertex_matrix();

/// Sign of the DFT entry at (out port, in port): negative only at (1, 1).
inline int dft_sign(int out_port, int in_port) { return out_port == 1 && in_port == 1 ? -1 : 1; }

/// B x B bond scattering matrix assembled from DFT vertex blocks.
///
/// S(b', b) is nonzero only when t(b) = o(b'); its value is the DFT entry at
/// (position of b' in out_bonds(v), position of b in in_bonds(v)).
class BondScattering {
public:
    explicit BondScattering(DirectedGraph graph);

    const DirectedGraph& graph() const { return graph_; }
    const std::vector<VertexPorts>& ports() const { return ports_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    int size() const { return graph_.bond_count(); }

    /// Sign of S(to, from): +1 / -1 on allowed transitions, 0 otherwise.
    int transition_sign(BondId from, BondId to) const;

private:
    DirectedGraph graph_;
    std::vector<VertexPorts> ports_;
    Eigen::MatrixXcd matrix_;
};

/// Diagonal of L: positive, pairwise distinct bond lengths.
class BondLengths {
public:
    explicit BondLengths(std::vector<double> lengths);

    const std::vector<double>& values() const { return lengths_; }
    int size() const { return static_cast<int>(lengths_.size()); }
    double operator[](BondId b) const { return lengths_[static_cast<std::size_t>(b)]; }

private:
    std::vector<double> lengths_;
};

/// B i.i.d. uniform draws from [low, high) with std::mt19937_64 seeded by
/// `seed`; collisions are redrawn so the result is pairwise distinct.
BondLengths sample_bond_lengths(const DirectedGraph& g, std::uint64_t seed, double low = 1.0, double high = 2.0);

/// U(k) = S diag(exp(i k L_b)).
Eigen::MatrixXcd evolution_operator(const BondScattering& S, const BondLengths& L, double k);

/// Allocation-free variant of evolution_operator() for sampling loops.
void evolution_operator_into(const BondScattering& S, const BondLengths& L, double k, Eigen::MatrixXcd& out);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const Eigen::MatrixXcd& U);

}  // namespace qgstat
