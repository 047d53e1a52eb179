#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "qgstat/orbits.hpp"

using namespace qgstat;

TEST(Canonical, MinimalRotationAndPrimitivity) {
    auto g = build_binary_graph(1, 3);
    auto cyc = oracle::cycle_bonds(g, {1, 2, 4});
    std::vector<BondId> rotated{cyc[2], cyc[0], cyc[1]};
    auto a = canonical_orbit(g, cyc);
    auto b = canonical_orbit(g, rotated);
    EXPECT_EQ(a.orbit, b.orbit);
    EXPECT_TRUE(a.primitive);
    EXPECT_EQ(a.orbit.bonds.front(), *std::min_element(cyc.begin(), cyc.end()));

    std::vector<BondId> doubled = cyc;
    doubled.insert(doubled.end(), cyc.begin(), cyc.end());
    EXPECT_FALSE(canonical_orbit(g, doubled).primitive);

    std::vector<BondId> broken{cyc[0], cyc[2]};
    EXPECT_THROW(canonical_orbit(g, broken), std::invalid_argument);
}

TEST(PseudoOrbitType, SortedDistinct) {
    auto g = build_binary_graph(1, 3);
    PeriodicOrbit loop0{oracle::cycle_bonds(g, {0})};
    PeriodicOrbit loop7{oracle::cycle_bonds(g, {7})};
    PseudoOrbit po({loop7, loop0});
    EXPECT_EQ(po.orbits().front(), loop0);
    EXPECT_EQ(po.length(), 2);
    EXPECT_EQ(po.orbit_count(), 2);
    EXPECT_FALSE(po.has_repeated_bond());
    EXPECT_THROW(PseudoOrbit({loop0, loop0}), std::invalid_argument);

    PeriodicOrbit two = canonical_orbit(g, oracle::cycle_bonds(g, {0, 0, 1, 2, 4})).orbit;
    PseudoOrbit repeated({loop0, two});
    EXPECT_TRUE(repeated.has_repeated_bond());
    EXPECT_EQ(repeated.bond_multiset().size(), 6U);
}

class SubsetOracle : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(SubsetOracle, AdmissibleSubsetsMatchMaskScan) {
    auto [p, r] = GetParam();
    auto g = build_binary_graph(p, r);
    for (int n = 0; n <= g.bond_count(); ++n) {
        auto fast = admissible_subsets(g, n);
        auto brute = oracle::balanced_subsets_by_scan(g, n);
        EXPECT_EQ(fast, brute) << "n=" << n;
    }
}

TEST_P(SubsetOracle, CoversMatchPermutationCount) {
    auto [p, r] = GetParam();
    auto g = build_binary_graph(p, r);
    for (int n = 1; n <= std::min(8, g.bond_count()); ++n) {
        for (const auto& subset : admissible_subsets(g, n)) {
            auto family = covers_of_subset(g, subset);
            EXPECT_EQ(static_cast<int>(family.covers.size()), oracle::cover_count_by_permutations(g, subset));
            EXPECT_EQ(static_cast<int>(family.covers.size()), 1 << family.doubly_visited);
            std::set<PseudoOrbit> unique(family.covers.begin(), family.covers.end());
            EXPECT_EQ(unique.size(), family.covers.size());
            for (const auto& po : family.covers) {
                EXPECT_EQ(po.bond_multiset(), subset);
                EXPECT_EQ(po.length(), n);
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Binary, SubsetOracle,
                         ::testing::Values(std::pair{1, 1}, std::pair{1, 2}, std::pair{1, 3}, std::pair{3, 1}, std::pair{5, 1}));

TEST(Covers, RejectsInadmissible) {
    auto g = build_binary_graph(1, 3);
    std::vector<BondId> open{oracle::bond_between(g, 0, 1)};
    EXPECT_THROW(covers_of_subset(g, open), std::invalid_argument);
}

TEST(Amplitude, MagnitudeAndSign) {
    BondScattering S(build_binary_graph(1, 3));
    const auto& g = S.graph();
    for (int n = 1; n <= 6; ++n)
        for (const auto& subset : admissible_subsets(g, n))
            for (const auto& po : covers_of_subset(g, subset).covers) {
                auto A = amplitude(S, po);
                EXPECT_EQ(A.length, n);
                EXPECT_NEAR(std::abs(A.value()), std::pow(2.0, -n / 2.0), 1e-15);
                // direct product of matrix entries
                double product = 1.0;
                for (const auto& orbit : po.orbits())
                    for (std::size_t i = 0; i < orbit.bonds.size(); ++i)
                        product *= S.matrix()(orbit.bonds[(i + 1) % orbit.bonds.size()], orbit.bonds[i]).real();
                EXPECT_NEAR(A.value(), product, 1e-15);
            }
}

namespace {

// Closed walks of length len counted by trace(A^len); primitive orbits by
// Mobius inversion over divisors: sum_{d | len} d * prim(d) = tr A^len.
std::map<int, long long> primitive_counts_by_traces(const DirectedGraph& g, int max_len) {
    const int B = g.bond_count();
    std::vector<std::vector<long long>> T(B, std::vector<long long>(B, 0));
    for (int a = 0; a < B; ++a)
        for (int b = 0; b < B; ++b) T[a][b] = g.terminus(a) == g.origin(b);
    std::vector<std::vector<long long>> P = T;
    std::map<int, long long> traces;
    for (int len = 1; len <= max_len; ++len) {
        long long tr = 0;
        for (int a = 0; a < B; ++a) tr += P[a][a];
        traces[len] = tr;
        std::vector<std::vector<long long>> next(B, std::vector<long long>(B, 0));
        for (int a = 0; a < B; ++a)
            for (int k = 0; k < B; ++k)
                if (P[a][k])
                    for (int b = 0; b < B; ++b) next[a][b] += P[a][k] * T[k][b];
        P = std::move(next);
    }
    std::map<int, long long> prim;
    for (int len = 1; len <= max_len; ++len) {
        long long rest = traces[len];
        for (int d = 1; d < len; ++d)
            if (len % d == 0) rest -= d * prim[d];
        prim[len] = rest / len;
    }
    return prim;
}

}  // namespace

TEST(PrimitiveOrbits, CountsMatchTraceFormula) {
    for (auto [p, r] : {std::pair{1, 3}, {3, 1}}) {
        auto g = build_binary_graph(p, r);
        auto orbits = primitive_orbits(g, 8);
        std::map<int, long long> got;
        for (const auto& o : orbits) {
            ++got[o.length()];
            EXPECT_TRUE(canonical_orbit(g, o.bonds).primitive);
            EXPECT_EQ(canonical_orbit(g, o.bonds).orbit, o);
        }
        auto want = primitive_counts_by_traces(g, 8);
        for (int len = 1; len <= 8; ++len) EXPECT_EQ(got[len], want[len]) << len;
        EXPECT_TRUE(std::is_sorted(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) {
            return std::pair(a.length(), a.bonds) < std::pair(b.length(), b.bonds);
        }));
    }
}

TEST(Enumerate, BondDistinctIsGeneralWithoutRepeats) {
    auto g = build_binary_graph(3, 1);
    for (int n = 0; n <= 6; ++n) {
        auto distinct = enumerate_pseudo_orbits(g, n, EnumerationMode::bond_distinct);
        auto general = enumerate_pseudo_orbits(g, n, EnumerationMode::general);
        std::set<PseudoOrbit> filtered;
        for (const auto& po : general)
            if (!po.has_repeated_bond()) filtered.insert(po);
        std::set<PseudoOrbit> d(distinct.begin(), distinct.end());
        EXPECT_EQ(d, filtered) << n;
        EXPECT_EQ(d.size(), distinct.size());
    }
    ASSERT_EQ(enumerate_pseudo_orbits(g, 0, EnumerationMode::general).size(), 1U);
}

TEST(Enumerate, CapIsEnforced) {
    auto g = build_binary_graph(1, 3);
    EnumerationLimits tight{.max_walks = 10, .max_pseudo_orbits = 10};
    EXPECT_THROW(enumerate_pseudo_orbits(g, 8, EnumerationMode::general, tight), EnumerationCapExceeded);
}
