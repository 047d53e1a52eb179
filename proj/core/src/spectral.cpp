#include "qgstat/spectral.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace qgstat {

namespace {

void check_square_unitary(const Eigen::MatrixXcd& U) {
    if (U.rows() != U.cols() || U.rows() == 0) throw std::invalid_argument("matrix must be square and non-empty");
    const double defect = unitarity_defect(U);
    if (!(defect <= 1e-6)) {
        throw std::invalid_argument("matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
}

}  // namespace

CharPolySolver::CharPolySolver(int size)
    : size_(size),
      reduction_(size),
      polys_(static_cast<std::size_t>(size + 1) * static_cast<std::size_t>(size + 1)) {}

void CharPolySolver::compute(const Eigen::MatrixXcd& U, std::vector<Complex>& out) {
    const int B = size_;
    if (U.rows() != B || U.cols() != B) throw std::invalid_argument("CharPolySolver: size mismatch");

    // The packed matrix keeps Householder data below the subdiagonal; only
    // the upper Hessenberg part is read.
    reduction_.compute(U);
    const auto& H = reduction_.packedMatrix();
    const auto W = static_cast<std::size_t>(B + 1);
    auto poly = [&](int k) { return polys_.data() + static_cast<std::size_t>(k) * W; };

    // p_k(z) = (h_kk - z) p_{k-1} + sum_{i<k} (-1)^(k-i) h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    // with 1-based indices, p_0 = 1.
    poly(0)[0] = 1.0;
    for (int k = 1; k <= B; ++k) {
        Complex* q = poly(k);
        const Complex* prev = poly(k - 1);
        const Complex hkk = H(k - 1, k - 1);
        std::fill(q, q + k + 1, Complex{});
        for (int d = 0; d < k; ++d) {
            q[d] += hkk * prev[d];
            q[d + 1] -= prev[d];
        }
        Complex chain = 1.0;
        for (int i = k - 1; i >= 1; --i) {
            chain *= H(i, i - 1);
            const Complex f = ((k - i) % 2 == 1 ? -1.0 : 1.0) * H(i - 1, k - 1) * chain;
            const Complex* lower = poly(i - 1);
            for (int d = 0; d < i; ++d) q[d] += f * lower[d];
        }
    }
    const Complex* top = poly(B);
    out.resize(W);
    for (int n = 0; n <= B; ++n) out[static_cast<std::size_t>(n)] = top[B - n];
}

CoefficientVector char_poly_coefficients(const Eigen::MatrixXcd& U) {
    check_square_unitary(U);
    CharPolySolver solver(static_cast<int>(U.rows()));
    CoefficientVector out;
    solver.compute(U, out.a);
    return out;
}

CoefficientVector char_poly_coefficients_by_eigenvalues(const Eigen::MatrixXcd& U) {
    check_square_unitary(U);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration did not converge");
    const auto& lambda = solver.eigenvalues();
    const int B = static_cast<int>(U.rows());

    // elementary symmetric polynomials e_0..e_B
    std::vector<Complex> e(static_cast<std::size_t>(B + 1), Complex{});
    e[0] = 1.0;
    for (int i = 0; i < B; ++i) {
        for (int j = i + 1; j >= 1; --j) e[static_cast<std::size_t>(j)] += lambda(i) * e[static_cast<std::size_t>(j - 1)];
    }
    CoefficientVector out;
    out.a.resize(e.size());
    for (int n = 0; n <= B; ++n) {
        out.a[static_cast<std::size_t>(n)] = ((B - n) % 2 == 0 ? 1.0 : -1.0) * e[static_cast<std::size_t>(n)];
    }
    return out;
}

double riemann_siegel_residual(const CoefficientVector& coeffs) {
    const auto& a = coeffs.a;
    if (a.empty()) return 0.0;
    const std::size_t B = a.size() - 1;
    double worst = 0.0;
    for (std::size_t n = 0; n <= B; ++n) worst = std::max(worst, std::abs(a[n] - a[B] * std::conj(a[B - n])));
    return worst;
}

namespace {

constexpr std::int64_t kBlockSize = 1024;

// Stream of k values for one block of samples; block boundaries are fixed,
// so sample i always sees the same k whatever the thread count.
class BlockStream {
public:
    BlockStream(std::uint64_t seed, std::int64_t block, double k_max) : k_max_(k_max) {
        const auto b = static_cast<std::uint64_t>(block);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        engine_.seed(seq);
    }

    double next() { return std::generate_canonical<double, 53>(engine_) * k_max_; }

private:
    std::mt19937_64 engine_;
    double k_max_;
};

}  // namespace

double sample_k(std::uint64_t seed, std::int64_t index, double k_max) {
    if (index < 0) throw std::invalid_argument("sample index must be non-negative");
    BlockStream stream(seed, index / kBlockSize, k_max);
    for (std::int64_t i = 0; i < index % kBlockSize; ++i) stream.next();
    return stream.next();
}

namespace {

// Running mean / M2 (Welford), merged across blocks with Chan's update.
struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const auto total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
        m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) /
                             static_cast<double>(total);
        count = total;
    }
};

}  // namespace

std::vector<VarianceEstimate> mc_variance(const BondScattering& S, const BondLengths& L, std::span<const int> indices,
                                          const MonteCarloOptions& options) {
    const int B = S.size();
    if (options.samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    if (!(options.k_max > 0.0)) throw std::invalid_argument("k_max must be positive");
    if (L.size() != B) throw std::invalid_argument("bond lengths and scattering matrix disagree in size");
    for (int n : indices) {
        if (n < 0 || n > B) throw std::invalid_argument("coefficient index out of range 0..B");
    }

    const std::int64_t blocks = (options.samples + kBlockSize - 1) / kBlockSize;
    const std::size_t width = indices.size();
    std::vector<Moments> block_moments(static_cast<std::size_t>(blocks) * width);

    std::atomic<std::int64_t> next_block{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            CharPolySolver solver(B);
            Eigen::MatrixXcd U(B, B);
            std::vector<Complex> a;
            for (std::int64_t blk = next_block++; blk < blocks; blk = next_block++) {
                Moments* m = block_moments.data() + static_cast<std::size_t>(blk) * width;
                const std::int64_t begin = blk * kBlockSize;
                const std::int64_t end = std::min(options.samples, begin + kBlockSize);
                BlockStream stream(options.seed, blk, options.k_max);
                for (std::int64_t i = begin; i < end; ++i) {
                    evolution_operator_into(S, L, stream.next(), U);
                    solver.compute(U, a);
                    for (std::size_t j = 0; j < width; ++j) {
                        const double x = std::norm(a[static_cast<std::size_t>(indices[j])]);
                        if (!std::isfinite(x)) throw std::runtime_error("non-finite coefficient in sample");
                        m[j].add(x);
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_block = blocks;
        }
    };

    const int threads = static_cast<int>(std::clamp<std::int64_t>(options.threads, 1, blocks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<VarianceEstimate> out;
    out.reserve(width);
    for (std::size_t j = 0; j < width; ++j) {
        Moments total;
        for (std::int64_t blk = 0; blk < blocks; ++blk) total.merge(block_moments[static_cast<std::size_t>(blk) * width + j]);
        VarianceEstimate est;
        est.n = indices[j];
        est.mean = total.mean;
        const double sample_var = total.m2 / static_cast<double>(total.count - 1);
        est.std_error = std::sqrt(std::max(0.0, sample_var) / static_cast<double>(total.count));
        est.samples = total.count;
        est.seed = options.seed;
        est.k_max = options.k_max;
        out.push_back(est);
    }
    return out;
}

Eigen::MatrixXcd principal_submatrix(const Eigen::MatrixXcd& M, std::span<const BondId> subset) {
    const auto n = static_cast<Eigen::Index>(subset.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) out(r, c) = M(subset[static_cast<std::size_t>(r)], subset[static_cast<std::size_t>(c)]);
    }
    return out;
}

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

double minor_squared(const Eigen::MatrixXcd& M, std::span<const BondId> subset) {
    if (subset.empty()) return 1.0;
    const Eigen::MatrixXcd sub = principal_submatrix(M, subset);
    return std::norm(sub.partialPivLu().determinant());
}

}  // namespace

double minor_sum_variance(const BondScattering& S, int n, double max_subsets) {
    const int B = S.size();
    if (n < 0 || n > B) throw std::invalid_argument("coefficient index out of range 0..B");
    if (binomial(B, n) > max_subsets) {
        throw std::length_error("minor sum over C(" + std::to_string(B) + "," + std::to_string(n) +
                                ") subsets exceeds the configured limit");
    }
    // Lexicographic walk over all n-combinations of 0..B-1.
    std::vector<BondId> subset(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) subset[static_cast<std::size_t>(i)] = i;
    double total = 0.0;
    while (true) {
        total += minor_squared(S.matrix(), subset);
        int i = n - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == B - n + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return total;
}

SubsetContribution subset_contribution(const BondScattering& S, std::span<const BondId> subset) {
    const DirectedGraph& g = S.graph();
    std::vector<int> in_count(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> out_count(in_count.size(), 0);
    for (BondId b : subset) {
        if (b < 0 || b >= g.bond_count()) throw std::invalid_argument("bond id out of range");
        ++in_count[static_cast<std::size_t>(g.terminus(b))];
        ++out_count[static_cast<std::size_t>(g.origin(b))];
    }
    SubsetContribution out;
    out.minor_squared = minor_squared(S.matrix(), subset);
    if (in_count == out_count) {
        out.doubly_visited = static_cast<int>(std::count(in_count.begin(), in_count.end(), 2));
    }
    return out;
}

}  // namespace qgstat
