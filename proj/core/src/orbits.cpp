#include "qgstat/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace qgstat {

namespace {

void check_closed_walk(const DirectedGraph& g, std::span<const BondId> walk) {
    if (walk.empty()) throw std::invalid_argument("empty walk");
    for (BondId b : walk) {
        if (b < 0 || b >= g.bond_count()) throw std::invalid_argument("bond id out of range");
    }
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const BondId next = walk[(i + 1) % walk.size()];
        if (g.terminus(walk[i]) != g.origin(next)) {
            throw std::invalid_argument("walk is not closed: bond " + std::to_string(walk[i]) +
                                        " does not lead into bond " + std::to_string(next));
        }
    }
}

// True iff `word` is strictly smaller than each of its nontrivial rotations.
bool is_strict_minimal_rotation(std::span<const BondId> word) {
    const std::size_t n = word.size();
    for (std::size_t shift = 1; shift < n; ++shift) {
        for (std::size_t i = 0; i < n; ++i) {
            const BondId a = word[i];
            const BondId b = word[(i + shift) % n];
            if (a < b) break;
            if (a > b) return false;
            if (i + 1 == n) return false;  // equal rotation: periodic
        }
    }
    return true;
}

}  // namespace

CanonicalOrbit canonical_orbit(const DirectedGraph& g, std::span<const BondId> walk) {
    check_closed_walk(g, walk);
    const std::size_t n = walk.size();
    std::vector<BondId> best(walk.begin(), walk.end());
    std::vector<BondId> rotated(n);
    for (std::size_t shift = 1; shift < n; ++shift) {
        for (std::size_t i = 0; i < n; ++i) rotated[i] = walk[(i + shift) % n];
        if (rotated < best) best = rotated;
    }
    std::size_t period = n;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) repeats = walk[i] == walk[i - d];
        if (repeats) {
            period = d;
            break;
        }
    }
    return {PeriodicOrbit{std::move(best)}, period == n};
}

PseudoOrbit::PseudoOrbit(std::vector<PeriodicOrbit> orbits) : orbits_(std::move(orbits)) {
    std::sort(orbits_.begin(), orbits_.end());
    if (std::adjacent_find(orbits_.begin(), orbits_.end()) != orbits_.end()) {
        throw std::invalid_argument("pseudo orbit contains a repeated periodic orbit");
    }
    for (const auto& o : orbits_) length_ += o.length();
}

std::vector<BondId> PseudoOrbit::bond_multiset() const {
    std::vector<BondId> all;
    all.reserve(static_cast<std::size_t>(length_));
    for (const auto& o : orbits_) all.insert(all.end(), o.bonds.begin(), o.bonds.end());
    std::sort(all.begin(), all.end());
    return all;
}

bool PseudoOrbit::has_repeated_bond() const {
    const auto all = bond_multiset();
    return std::adjacent_find(all.begin(), all.end()) != all.end();
}

double Amplitude::value() const { return sign * std::pow(2.0, -0.5 * length); }

Amplitude amplitude(const BondScattering& S, const PseudoOrbit& pseudo_orbit) {
    Amplitude out;
    out.length = pseudo_orbit.length();
    out.orbit_count = pseudo_orbit.orbit_count();
    for (const auto& orbit : pseudo_orbit.orbits()) {
        const auto& bonds = orbit.bonds;
        for (std::size_t i = 0; i < bonds.size(); ++i) {
            const int s = S.transition_sign(bonds[i], bonds[(i + 1) % bonds.size()]);
            if (s == 0) throw std::invalid_argument("pseudo orbit uses a forbidden bond transition");
            out.sign *= s;
        }
    }
    return out;
}

void for_each_admissible_subset(const DirectedGraph& g, int n, const std::function<void(const BondSubset&)>& visit) {
    const int B = g.bond_count();
    if (n < 0 || n > B) return;

    // closes_at[j]: vertices whose incident bonds are all decided once bond j is.
    std::vector<std::vector<VertexId>> closes_at(static_cast<std::size_t>(B));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        BondId last = -1;
        for (BondId b : g.in_bonds(v)) last = std::max(last, b);
        for (BondId b : g.out_bonds(v)) last = std::max(last, b);
        if (last >= 0) closes_at[static_cast<std::size_t>(last)].push_back(v);
    }

    std::vector<int> balance(static_cast<std::size_t>(g.vertex_count()), 0);  // out minus in
    BondSubset chosen;
    chosen.reserve(static_cast<std::size_t>(n));

    auto closed_ok = [&](BondId j) {
        for (VertexId v : closes_at[static_cast<std::size_t>(j)]) {
            if (balance[static_cast<std::size_t>(v)] != 0) return false;
        }
        return true;
    };

    std::function<void(BondId)> recurse = [&](BondId j) {
        const int have = static_cast<int>(chosen.size());
        if (j == B) {
            if (have == n) visit(chosen);
            return;
        }
        if (have + (B - j) < n) return;
        const Bond& bond = g.bond(j);
        if (have < n) {
            ++balance[static_cast<std::size_t>(bond.origin)];
            --balance[static_cast<std::size_t>(bond.terminus)];
            chosen.push_back(j);
            if (closed_ok(j)) recurse(j + 1);
            chosen.pop_back();
            --balance[static_cast<std::size_t>(bond.origin)];
            ++balance[static_cast<std::size_t>(bond.terminus)];
        }
        if (closed_ok(j)) recurse(j + 1);
    };
    recurse(0);
}

std::vector<BondSubset> admissible_subsets(const DirectedGraph& g, int n) {
    std::vector<BondSubset> out;
    for_each_admissible_subset(g, n, [&](const BondSubset& s) { out.push_back(s); });
    return out;
}

CoverFamily covers_of_subset(const DirectedGraph& g, std::span<const BondId> subset) {
    const auto V = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::vector<BondId>> ins(V), outs(V);
    CoverFamily family;
    family.subset.assign(subset.begin(), subset.end());
    std::sort(family.subset.begin(), family.subset.end());
    if (std::adjacent_find(family.subset.begin(), family.subset.end()) != family.subset.end()) {
        throw std::invalid_argument("bond subset has repeated ids");
    }
    for (BondId b : family.subset) {
        if (b < 0 || b >= g.bond_count()) throw std::invalid_argument("bond id out of range");
        ins[static_cast<std::size_t>(g.terminus(b))].push_back(b);
        outs[static_cast<std::size_t>(g.origin(b))].push_back(b);
    }
    std::vector<VertexId> doubles;
    for (std::size_t v = 0; v < V; ++v) {
        if (ins[v].size() != outs[v].size()) throw std::invalid_argument("bond subset is not admissible");
        if (ins[v].size() > 2) throw std::invalid_argument("bond subset visits a vertex more than twice");
        if (ins[v].size() == 2) doubles.push_back(static_cast<VertexId>(v));
    }
    family.doubly_visited = static_cast<int>(doubles.size());
    if (doubles.size() >= 31) throw std::length_error("too many doubly-visited vertices to enumerate covers");

    std::map<BondId, BondId> successor;
    for (std::size_t v = 0; v < V; ++v) {
        if (ins[v].size() == 1) successor[ins[v][0]] = outs[v][0];
    }
    const std::uint32_t count = std::uint32_t{1} << doubles.size();
    family.covers.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        for (std::size_t i = 0; i < doubles.size(); ++i) {
            const auto v = static_cast<std::size_t>(doubles[i]);
            const bool crossed = (mask >> i) & 1U;
            successor[ins[v][0]] = outs[v][crossed ? 1 : 0];
            successor[ins[v][1]] = outs[v][crossed ? 0 : 1];
        }
        std::vector<PeriodicOrbit> cycles;
        std::map<BondId, bool> seen;
        for (BondId start : family.subset) {
            if (seen[start]) continue;
            PeriodicOrbit cycle;
            for (BondId b = start; !seen[b]; b = successor.at(b)) {
                seen[b] = true;
                cycle.bonds.push_back(b);
            }
            // Bond-distinct cycle starting at its smallest id is already canonical.
            cycles.push_back(std::move(cycle));
        }
        family.covers.emplace_back(std::move(cycles));
    }
    return family;
}

std::vector<PeriodicOrbit> primitive_orbits(const DirectedGraph& g, int max_length, const EnumerationLimits& limits) {
    std::vector<PeriodicOrbit> found;
    if (max_length < 1) return found;
    std::int64_t walks = 0;
    std::vector<BondId> walk;

    // Canonical orbits start at their smallest bond, so DFS from `start`
    // only ever steps onto bonds with larger or equal id.
    std::function<void(BondId)> extend = [&](BondId start) {
        if (++walks > limits.max_walks) {
            throw EnumerationCapExceeded("closed-walk enumeration exceeded " + std::to_string(limits.max_walks) +
                                         " walks");
        }
        const BondId last = walk.back();
        if (g.terminus(last) == g.origin(start) && is_strict_minimal_rotation(walk)) {
            found.push_back(PeriodicOrbit{walk});
        }
        if (static_cast<int>(walk.size()) == max_length) return;
        for (BondId next : g.out_bonds(g.terminus(last))) {
            if (next < start) continue;
            walk.push_back(next);
            extend(start);
            walk.pop_back();
        }
    };
    for (BondId start = 0; start < g.bond_count(); ++start) {
        walk.assign(1, start);
        extend(start);
    }
    std::sort(found.begin(), found.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
        return a.length() != b.length() ? a.length() < b.length() : a.bonds < b.bonds;
    });
    return found;
}

std::vector<PseudoOrbit> enumerate_pseudo_orbits(const DirectedGraph& g, int n, EnumerationMode mode,
                                                 const EnumerationLimits& limits) {
    std::vector<PseudoOrbit> out;
    if (n < 0) return out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }

    if (mode == EnumerationMode::bond_distinct) {
        for_each_admissible_subset(g, n, [&](const BondSubset& subset) {
            CoverFamily family = covers_of_subset(g, subset);
            if (static_cast<std::int64_t>(out.size() + family.covers.size()) > limits.max_pseudo_orbits) {
                throw EnumerationCapExceeded("pseudo-orbit enumeration exceeded " +
                                             std::to_string(limits.max_pseudo_orbits));
            }
            for (auto& c : family.covers) out.push_back(std::move(c));
        });
        return out;
    }

    const std::vector<PeriodicOrbit> orbits = primitive_orbits(g, n, limits);
    std::vector<PeriodicOrbit> picked;
    std::function<void(std::size_t, int)> choose = [&](std::size_t from, int remaining) {
        if (remaining == 0) {
            if (static_cast<std::int64_t>(out.size()) >= limits.max_pseudo_orbits) {
                throw EnumerationCapExceeded("pseudo-orbit enumeration exceeded " +
                                             std::to_string(limits.max_pseudo_orbits));
            }
            out.emplace_back(picked);
            return;
        }
        for (std::size_t i = from; i < orbits.size(); ++i) {
            if (orbits[i].length() > remaining) break;  // sorted by length
            picked.push_back(orbits[i]);
            choose(i + 1, remaining - orbits[i].length());
            picked.pop_back();
        }
    };
    choose(0, n);
    return out;
}

}  // namespace qgstat
