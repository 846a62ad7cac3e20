#pragma once

// Worked examples and random generators shared by the unit and acceptance tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gsft/action.hpp"
#include "gsft/perm_group.hpp"
#include "gsft/sft.hpp"
#include "gsft/sse.hpp"

namespace fixture {

using namespace gsft;

inline PermutationAction make_action(const IntMatrix& m, std::vector<std::string> cycles) {
    std::vector<Permutation> gens;
    for (const auto& c : cycles) gens.push_back(parse_cycles(c, m.dim()));
    return validate_action(SftPresentation(m), PermGroup::from_generators(m.dim(), gens, 1000));
}

inline IntMatrix cyclic4_matrix() {
    return IntMatrix({{1, 0, 1, 0, 1, 0},
                      {0, 1, 0, 1, 0, 1},
                      {1, 1, 1, 0, 0, 0},
                      {1, 1, 0, 1, 0, 0},
                      {1, 1, 0, 0, 1, 0},
                      {1, 1, 0, 0, 0, 1}});
}

/// Six states, Z/4 generated by (1 2)(3 4 5 6).
inline PermutationAction cyclic4() { return make_action(cyclic4_matrix(), {"(1 2)(3 4 5 6)"}); }

/// The five-state factor obtained by identifying the first two states.
inline IntMatrix cyclic4_factor_matrix() {
    return IntMatrix({{1, 1, 1, 1, 1}, {1, 1, 0, 0, 0}, {1, 0, 1, 0, 0}, {1, 0, 0, 1, 0}, {1, 0, 0, 0, 1}});
}

inline PermutationAction cyclic4_factor(const PermutationAction& source) {
    auto images = homomorphic_images(source.group(), {parse_cycles("(2 3 4 5)", 5)}, 5);
    return validate_action(SftPresentation(cyclic4_factor_matrix()), PermGroup::aligned_with(source.group(), 5, images));
}

inline std::vector<std::size_t> cyclic4_factor_map() { return {0, 0, 1, 2, 3, 4}; }

/// Reducible three-state example with (1 2).
inline PermutationAction reducible_swap() { return make_action(IntMatrix({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}), {"(1 2)"}); }

inline PermutationAction three_state_swap() { return make_action(IntMatrix({{1, 1, 1}, {1, 1, 0}, {1, 0, 1}}), {"(2 3)"}); }

inline PermutationAction full_two_shift_swap() { return make_action(IntMatrix({{1, 1}, {1, 1}}), {"(1 2)"}); }

/// The symmetric group on three points, listed e, (12), (13), (23), (123), (132).
inline std::vector<Permutation> s3_elements() {
    return {parse_cycles("()", 3),      parse_cycles("(1 2)", 3),   parse_cycles("(1 3)", 3),
            parse_cycles("(2 3)", 3),   parse_cycles("(1 2 3)", 3), parse_cycles("(1 3 2)", 3)};
}

/// Full shift on S3 with G = S3 acting by v -> g^-1 v g.
inline PermutationAction s3_conjugation() {
    auto elems = s3_elements();
    auto index = [&](const Permutation& p) {
        return static_cast<std::uint32_t>(std::find(elems.begin(), elems.end(), p) - elems.begin());
    };
    std::vector<Permutation> gens;
    for (const auto& g : {elems[1], elems[4]}) {
        Permutation on_states(6);
        for (std::size_t v = 0; v < 6; ++v) on_states[v] = index(compose(compose(inverse(g), elems[v]), g));
        gens.push_back(on_states);
    }
    IntMatrix all(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) all.set(i, j, 1);
    return validate_action(SftPresentation(all), PermGroup::from_generators(6, gens, 1000));
}

inline std::vector<PermutationAction> all_fixtures() {
    return {cyclic4(), cyclic4_factor(cyclic4()), reducible_swap(), three_state_swap(), full_two_shift_swap(), s3_conjugation()};
}

inline std::vector<PermutationAction> irreducible_fixtures() {
    return {cyclic4(), cyclic4_factor(cyclic4()), three_state_swap(), full_two_shift_swap(), s3_conjugation()};
}

}  // namespace fixture

namespace gen {

using namespace gsft;

inline Permutation random_permutation(std::mt19937& rng, std::size_t n) {
    Permutation p = identity_permutation(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// A permutation group on n points with order at most max_order (trivial allowed).
inline PermGroup random_group(std::mt19937& rng, std::size_t n, std::size_t max_order) {
    for (;;) {
        std::vector<Permutation> gens;
        std::size_t count = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
        for (std::size_t k = 0; k < count; ++k) gens.push_back(random_permutation(rng, n));
        try {
            auto g = PermGroup::from_generators(n, gens, max_order);
            if (g.order() <= max_order) return g;
        } catch (const CapExceeded&) {
        }
    }
}

/// Orbits of the diagonal action on ordered pairs of states.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pair_orbits(const PermGroup& g) {
    const std::size_t n = g.degree();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (seen.count({i, j})) continue;
            std::set<std::pair<std::size_t, std::size_t>> orbit;
            for (const auto& p : g.elements()) orbit.insert({p[i], p[j]});
            seen.insert(orbit.begin(), orbit.end());
            out.emplace_back(orbit.begin(), orbit.end());
        }
    return out;
}

/// Random G-invariant essential 0-1 action with at most max_states states
/// and |G| <= max_order; irreducible on request.
inline PermutationAction random_action(std::mt19937& rng, std::size_t max_states, std::size_t max_order,
                                       bool irreducible = false) {
    for (;;) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
        auto g = random_group(rng, n, max_order);
        double density = std::uniform_real_distribution<double>(0.3, 0.7)(rng);
        IntMatrix m(n);
        for (const auto& orbit : pair_orbits(g))
            if (std::bernoulli_distribution(density)(rng))
                for (auto [i, j] : orbit) m.set(i, j, 1);
        try {
            SftPresentation p(m);
            if (irreducible && !is_irreducible(p)) continue;
            return validate_action(std::move(p), std::move(g));
        } catch (const PreconditionError&) {
        }
    }
}

/// Random G-compatible split: each orbit representative's neighbors are
/// grouped by unions of stabilizer orbits, and the partition is carried to
/// the other orbit members by the first element reaching them.
inline SplitData random_split(std::mt19937& rng, const PermutationAction& a, SplitDirection dir) {
    const auto& m = a.matrix();
    const auto& g = a.group();
    const std::size_t n = m.dim();
    SplitData d{dir, std::vector<std::vector<std::vector<std::size_t>>>(n)};
    std::vector<bool> done(n, false);
    for (std::size_t rep = 0; rep < n; ++rep) {
        if (done[rep]) continue;
        std::vector<std::size_t> stab;
        for (std::size_t k = 0; k < g.order(); ++k)
            if (g.element(k)[rep] == rep) stab.push_back(k);
        std::vector<std::size_t> neighbors;
        for (std::size_t j = 0; j < n; ++j)
            if ((dir == SplitDirection::out ? m(rep, j) : m(j, rep)) != 0) neighbors.push_back(j);
        // stabilizer orbits on neighbors, each assigned to a random block
        std::map<std::size_t, std::size_t> block_of;
        std::size_t blocks = 0;
        for (auto j : neighbors) {
            if (block_of.count(j)) continue;
            std::size_t b = std::uniform_int_distribution<std::size_t>(0, blocks)(rng);
            if (b == blocks) ++blocks;
            for (auto k : stab) block_of[g.element(k)[j]] = b;
        }
        std::vector<std::vector<std::size_t>> partition(blocks);
        for (auto [j, b] : block_of) partition[b].push_back(j);
        for (std::size_t k = 0; k < g.order(); ++k) {
            std::size_t target = g.element(k)[rep];
            if (done[target]) continue;
            done[target] = true;
            for (const auto& block : partition) {
                std::vector<std::size_t> moved;
                for (auto j : block) moved.push_back(g.element(k)[j]);
                std::sort(moved.begin(), moved.end());
                d.blocks[target].push_back(moved);
            }
        }
    }
    return d;
}

}  // namespace gen
