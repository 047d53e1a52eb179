#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "qgstat/quantize.hpp"

namespace qgstat {

/// Coefficients of det(U - zeta I) = sum_n a_n zeta^(B - n), n = 0..B.
struct CoefficientVector {
    std::vector<Complex> a;
    std::optional<double> k;  // spectral parameter, when evaluated from U(k)

    int degree() const { return static_cast<int>(a.size()) - 1; }
};

/// Characteristic-polynomial coefficients of a unitary matrix.
///
/// Reduces U to upper Hessenberg form and runs the determinant recurrence on
/// its leading principal submatrices. Throws std::invalid_argument for
/// non-square input or a unitarity defect above 1e-6.
CoefficientVector char_poly_coefficients(const Eigen::MatrixXcd& U);

/// Independent route: eigenvalues of U expanded as prod (lambda_i - zeta).
CoefficientVector char_poly_coefficients_by_eigenvalues(const Eigen::MatrixXcd& U);

/// Reusable buffers for the Hessenberg route; skips the unitarity check.
class CharPolySolver {
public:
    explicit CharPolySolver(int size);

    /// Writes a_0..a_B into `out` (resized to B + 1).
    void compute(const Eigen::MatrixXcd& U, std::vector<Complex>& out);

private:
    int size_;
    Eigen::HessenbergDecomposition<Eigen::MatrixXcd> reduction_;
    std::vector<Complex> polys_;  // row k holds det(H_k - zeta I), ascending powers
};

/// max_n |a_n - a_B conj(a_{B-n})|.
double riemann_siegel_residual(const CoefficientVector& coeffs);

struct VarianceEstimate {
    int n = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double k_max = 0.0;
};

struct MonteCarloOptions {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    double k_max = 1e5;
    int threads = 1;
};

/// The i-th sampled spectral parameter, uniform on [0, k_max]. Samples are
/// drawn in fixed blocks of 1024, each block from its own std::mt19937_64
/// seeded with (seed, block index), so the value depends only on
/// (seed, index), never on scheduling.
double sample_k(std::uint64_t seed, std::int64_t index, double k_max);

/// Sample mean and standard error of |a_n(k)|^2 for each n in `indices` over
/// uniformly drawn k. Results are bit-identical for any thread count.
std::vector<VarianceEstimate> mc_variance(const BondScattering& S, const BondLengths& L, std::span<const int> indices,
                                          const MonteCarloOptions& options);

/// Exact k-average of |a_n|^2: sum over all n-element bond subsets I of
/// |det S_I|^2, each minor by partial-pivot LU. Throws std::length_error if
/// C(B, n) exceeds `max_subsets`.
double minor_sum_variance(const BondScattering& S, int n, double max_subsets = 2e8);

struct SubsetContribution {
    double minor_squared = 0.0;
    /// Vertices with two bonds of I entering; empty when I is unbalanced.
    std::optional<int> doubly_visited;
};

SubsetContribution subset_contribution(const BondScattering& S, std::span<const BondId> subset);

/// Principal submatrix S restricted to rows and columns `subset`.
Eigen::MatrixXcd principal_submatrix(const Eigen::MatrixXcd& M, std::span<const BondId> subset);

}  // namespace qgstat
