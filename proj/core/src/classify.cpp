#include "qgstat/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgstat {

VisitProfile visit_profile(const DirectedGraph& g, const PseudoOrbit& pseudo_orbit) {
    VisitProfile profile;
    profile.visits.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> uses(static_cast<std::size_t>(g.bond_count()), 0);
    for (const auto& orbit : pseudo_orbit.orbits()) {
        for (BondId b : orbit.bonds) {
            ++uses[static_cast<std::size_t>(b)];
            ++profile.visits[static_cast<std::size_t>(g.terminus(b))];
        }
    }
    for (BondId b = 0; b < g.bond_count(); ++b) {
        if (uses[static_cast<std::size_t>(b)] >= 2) profile.repeated_bonds.emplace_back(b, uses[static_cast<std::size_t>(b)]);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const int count = profile.visits[static_cast<std::size_t>(v)];
        if (count == 2) profile.doubly_visited.push_back(v);
        if (count >= 3) profile.higher_visits.push_back(v);
    }
    return profile;
}

std::string ClassTag::label() const {
    switch (kind) {
        case OrbitClass::no_intersection: return "P0";
        case OrbitClass::zero_length_crossings: return "P^" + std::to_string(crossings);
        case OrbitClass::excluded: return "excluded";
    }
    return "excluded";
}

ClassTag classify_pseudo_orbit(const DirectedGraph& g, const PseudoOrbit& pseudo_orbit) {
    const VisitProfile profile = visit_profile(g, pseudo_orbit);
    ClassTag tag;
    if (!profile.repeated_bonds.empty()) {
        tag.kind = OrbitClass::excluded;
        tag.reason = "repeated bond: positive-length or l>2 encounter";
        return tag;
    }
    if (!profile.higher_visits.empty()) {
        tag.kind = OrbitClass::excluded;
        tag.reason = "vertex visited three or more times";
        return tag;
    }
    tag.crossings = static_cast<int>(profile.doubly_visited.size());
    tag.kind = tag.crossings == 0 ? OrbitClass::no_intersection : OrbitClass::zero_length_crossings;
    return tag;
}

std::int64_t ClassCounts::phat_at(int crossings) const {
    const auto it = phat.find(crossings);
    return it == phat.end() ? 0 : it->second;
}

ClassCounts class_counts(const DirectedGraph& g, int n, EnumerationMode mode, const EnumerationLimits& limits) {
    ClassCounts counts;
    counts.n = n;
    for (const PseudoOrbit& po : enumerate_pseudo_orbits(g, n, mode, limits)) {
        const ClassTag tag = classify_pseudo_orbit(g, po);
        switch (tag.kind) {
            case OrbitClass::no_intersection: ++counts.p0; break;
            case OrbitClass::zero_length_crossings: ++counts.phat[tag.crossings]; break;
            case OrbitClass::excluded: ++counts.excluded; break;
        }
    }
    return counts;
}

Dyadic variance_from_classes(const ClassCounts& counts) {
    Dyadic total(counts.p0);
    for (const auto& [crossings, count] : counts.phat) {
        if (crossings < 1 || crossings > counts.n) throw std::invalid_argument("crossing count outside 1..n");
        total += Dyadic(count) * Dyadic::pow2(crossings);
    }
    return total * Dyadic::pow2(-counts.n);
}

Dyadic c_gamma(const BondScattering& S, const PseudoOrbit& pseudo_orbit, std::span<const PseudoOrbit> partners) {
    const auto multiset = pseudo_orbit.bond_multiset();
    const Amplitude own = amplitude(S, pseudo_orbit);
    std::int64_t signed_sum = 0;
    for (const PseudoOrbit& partner : partners) {
        if (partner.bond_multiset() != multiset) {
            throw std::invalid_argument("partner pseudo orbit has a different bond multiset");
        }
        // (-1)^(m+m') A A' with A, A' = sign 2^(-n/2): the product is real.
        signed_sum += own.signed_sign() * amplitude(S, partner).signed_sign();
    }
    return Dyadic(signed_sum) * Dyadic::pow2(-pseudo_orbit.length());
}

DiagonalEstimate diagonal_approximation(const DirectedGraph& g, int n, const EnumerationLimits& limits) {
    DiagonalEstimate est;
    est.n = n;
    est.pseudo_orbits = static_cast<std::int64_t>(enumerate_pseudo_orbits(g, n, EnumerationMode::general, limits).size());
    est.value = Dyadic(est.pseudo_orbits) * Dyadic::pow2(-n);
    return est;
}

}  // namespace qgstat
