#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qgstat/graph.hpp"
#include "qgstat/quantize.hpp"

namespace qgstat {

using BondSubset = std::vector<BondId>;  // ascending bond ids

/// Closed bond walk stored as its lexicographically minimal rotation.
struct PeriodicOrbit {
    std::vector<BondId> bonds;

    int length() const { return static_cast<int>(bonds.size()); }
    friend auto operator<=>(const PeriodicOrbit&, const PeriodicOrbit&) = default;
};

struct CanonicalOrbit {
    PeriodicOrbit orbit;
    bool primitive = true;  // false iff the walk is a d-fold repetition, d >= 2
};

/// Minimal rotation and primitivity of a closed walk. Throws
/// std::invalid_argument if consecutive bonds (cyclically) are not adjacent.
CanonicalOrbit canonical_orbit(const DirectedGraph& g, std::span<const BondId> walk);

/// Set of pairwise-distinct primitive periodic orbits, kept sorted.
class PseudoOrbit {
public:
    PseudoOrbit() = default;
    /// Throws std::invalid_argument on duplicate orbits.
    explicit PseudoOrbit(std::vector<PeriodicOrbit> orbits);

    const std::vector<PeriodicOrbit>& orbits() const { return orbits_; }
    int length() const { return length_; }  // topological length n
    int orbit_count() const { return static_cast<int>(orbits_.size()); }

    /// Sorted bond ids with repetition: the exact stand-in for metric length.
    std::vector<BondId> bond_multiset() const;
    bool has_repeated_bond() const;

    friend auto operator<=>(const PseudoOrbit& a, const PseudoOrbit& b) { return a.orbits_ <=> b.orbits_; }
    friend bool operator==(const PseudoOrbit& a, const PseudoOrbit& b) { return a.orbits_ == b.orbits_; }

private:
    std::vector<PeriodicOrbit> orbits_;
    int length_ = 0;
};

/// A_gamma = sign * 2^(-length/2), with m = orbit_count.
struct Amplitude {
    int sign = 1;
    int length = 0;
    int orbit_count = 0;

    double value() const;
    /// Sign of (-1)^m A.
    int signed_sign() const { return orbit_count % 2 == 0 ? sign : -sign; }
};

/// Product of S(b', b) over consecutive bond pairs of every orbit.
Amplitude amplitude(const BondScattering& S, const PseudoOrbit& pseudo_orbit);

/// All pseudo orbits covering a bond subset exactly once.
struct CoverFamily {
    BondSubset subset;
    std::vector<PseudoOrbit> covers;
    int doubly_visited = 0;  // vertices entered by two bonds of the subset
};

/// Visit every n-bond subset that enters and leaves each vertex equally often.
/// Subsets arrive in lexicographic order.
void for_each_admissible_subset(const DirectedGraph& g, int n, const std::function<void(const BondSubset&)>& visit);
std::vector<BondSubset> admissible_subsets(const DirectedGraph& g, int n);

/// Enumerate the in->out pairings at every vertex touched by `subset` (two
/// choices at doubly-visited vertices) and decompose each into cycles.
/// Throws std::invalid_argument if the subset is not admissible.
CoverFamily covers_of_subset(const DirectedGraph& g, std::span<const BondId> subset);

enum class EnumerationMode { bond_distinct, general };

struct EnumerationLimits {
    std::int64_t max_walks = 50'000'000;
    std::int64_t max_pseudo_orbits = 20'000'000;
};

class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Primitive periodic orbits of length <= max_length (closed walks up to
/// rotation, repeated bonds allowed), sorted by (length, bonds).
std::vector<PeriodicOrbit> primitive_orbits(const DirectedGraph& g, int max_length, const EnumerationLimits& limits = {});

/// Primitive pseudo orbits with n bonds.
///
/// bond_distinct: covers of every admissible subset, i.e. pseudo orbits that
/// use n distinct bonds. general: every set of distinct primitive orbits of
/// total length n, repeated bonds allowed.
std::vector<PseudoOrbit> enumerate_pseudo_orbits(const DirectedGraph& g, int n, EnumerationMode mode,
                                                 const EnumerationLimits& limits = {});

}  // namespace qgstat
