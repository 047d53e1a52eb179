#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgstat/dyadic.hpp"
#include "qgstat/orbits.hpp"

namespace qgstat {

/// Vertex and bond usage of a pseudo orbit. The visit count of v is the
/// number of traversals entering v, which equals the number leaving it.
struct VisitProfile {
    std::vector<int> visits;                          // indexed by vertex
    std::vector<std::pair<BondId, int>> repeated_bonds;  // (bond, uses) for uses >= 2
    std::vector<VertexId> doubly_visited;
    std::vector<VertexId> higher_visits;              // visited three or more times
};

VisitProfile visit_profile(const DirectedGraph& g, const PseudoOrbit& pseudo_orbit);

enum class OrbitClass { no_intersection, zero_length_crossings, excluded };

struct ClassTag {
    OrbitClass kind = OrbitClass::no_intersection;
    int crossings = 0;   // N: number of 2-encounters of length zero
    std::string reason;  // set for excluded orbits

    /// "P0", "P^N" with N substituted, or "excluded".
    std::string label() const;
};

/// P0: no vertex visited twice and no bond repeated. P^N: no repeated bond and
/// exactly N >= 1 vertices visited twice (each a crossing at one vertex).
/// Everything else is excluded.
ClassTag classify_pseudo_orbit(const DirectedGraph& g, const PseudoOrbit& pseudo_orbit);

struct ClassCounts {
    int n = 0;
    std::int64_t p0 = 0;
    std::map<int, std::int64_t> phat;  // N -> |P^N|, N >= 1, zero entries omitted
    std::int64_t excluded = 0;

    std::int64_t phat_at(int crossings) const;
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

ClassCounts class_counts(const DirectedGraph& g, int n, EnumerationMode mode, const EnumerationLimits& limits = {});

/// 2^-n (|P0| + sum_N 2^N |P^N|), exactly.
Dyadic variance_from_classes(const ClassCounts& counts);

/// sum over partners of (-1)^(m + m') A Abar'. Every partner must share the
/// bond multiset of `pseudo_orbit`, otherwise std::invalid_argument.
Dyadic c_gamma(const BondScattering& S, const PseudoOrbit& pseudo_orbit, std::span<const PseudoOrbit> partners);

struct DiagonalEstimate {
    int n = 0;
    std::int64_t pseudo_orbits = 0;  // |P^n| over all primitive pseudo orbits
    Dyadic value;                    // 2^-n |P^n|
};

DiagonalEstimate diagonal_approximation(const DirectedGraph& g, int n, const EnumerationLimits& limits = {});

}  // namespace qgstat
