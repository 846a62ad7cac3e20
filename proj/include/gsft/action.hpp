#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gsft/error.hpp"
#include "gsft/perm_group.hpp"
#include "gsft/sft.hpp"

namespace gsft {

/// Sorted element indices of a subgroup.
using Subgroup = std::vector<std::size_t>;

/// A finite permutation group acting on the states of a 0-1 presentation by
/// one-block automorphisms: A(gi, gj) = A(i, j) for all g, i, j.
class PermutationAction {
public:
    PermutationAction() = default;

    const SftPresentation& presentation() const { return presentation_; }
    const IntMatrix& matrix() const { return presentation_.matrix(); }
    const PermGroup& group() const { return group_; }
    std::size_t dim() const { return presentation_.dim(); }

    std::uint32_t act(std::size_t g, std::size_t state) const { return group_.element(g)[state]; }

    Edge act(std::size_t g, const Edge& e) const { return {act(g, e.from), act(g, e.to), e.copy}; }

    friend PermutationAction validate_action(SftPresentation p, PermGroup g);

private:
    SftPresentation presentation_;
    PermGroup group_;
};

/// Checks the 0-1 form and the invariance law for every element and pair of
/// states; the error names a witnessing (g, i, j).
inline PermutationAction validate_action(SftPresentation p, PermGroup g) {
    if (g.degree() != p.dim())
        throw InputError("group degree " + std::to_string(g.degree()) + " does not match " + std::to_string(p.dim()) +
                         " states");
    if (!p.matrix().is_zero_one()) throw InputError("permutation actions need a 0-1 matrix");
    const auto& a = p.matrix();
    for (std::size_t k = 0; k < g.order(); ++k) {
        const auto& perm = g.element(k);
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < p.dim(); ++j)
                if (a(perm[i], perm[j]) != a(i, j))
                    throw PreconditionError("action does not preserve the matrix: g = " + to_cycle_string(perm) + ", A(" +
                                            std::to_string(perm[i] + 1) + "," + std::to_string(perm[j] + 1) + ") = " +
                                            a(perm[i], perm[j]).str() + " but A(" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") = " + a(i, j).str());
    }
    PermutationAction out;
    out.presentation_ = std::move(p);
    out.group_ = std::move(g);
    return out;
}

struct OrbitStructure {
    /// Orbits ordered by least member; members increasing.
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<std::size_t> orbit_of;
    std::vector<Subgroup> stabilizers;
    /// Elements fixing every state.
    Subgroup kernel;

    std::size_t representative(std::size_t orbit) const { return orbits[orbit].front(); }
    std::size_t count() const { return orbits.size(); }
};

inline OrbitStructure orbit_structure(const PermutationAction& a) {
    OrbitStructure s;
    const std::size_t n = a.dim();
    const auto& g = a.group();
    s.orbit_of.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (s.orbit_of[i] != n) continue;
        std::vector<std::size_t> orbit;
        for (std::size_t k = 0; k < g.order(); ++k) orbit.push_back(a.act(k, i));
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        for (auto j : orbit) s.orbit_of[j] = s.orbits.size();
        s.orbits.push_back(std::move(orbit));
    }
    s.stabilizers.resize(n);
    for (std::size_t k = 0; k < g.order(); ++k) {
        bool fixes_all = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (a.act(k, i) == i)
                s.stabilizers[i].push_back(k);
            else
                fixes_all = false;
        }
        if (fixes_all) s.kernel.push_back(k);
    }
    return s;
}

inline std::vector<std::size_t> fixed_states(const PermutationAction& a, std::size_t g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.act(g, i) == i) out.push_back(i);
    return out;
}

/// Principal submatrix on the states fixed by g; (0) when g fixes nothing.
inline IntMatrix fixed_submatrix(const PermutationAction& a, std::size_t g) {
    if (g >= a.group().order()) throw InputError("group element index out of range");
    auto states = fixed_states(a, g);
    if (states.empty()) return IntMatrix(1);
    return a.matrix().principal_submatrix(states);
}

/// Intersection of the state stabilizers along a cycle; equals Stab(w^inf).
inline Subgroup word_stabilizer(const PermutationAction& a, const CycleWord& w) {
    if (!w.closes()) throw InputError("word is not a closed path");
    for (const auto& e : w.edges)
        if (!a.presentation().has_edge(e)) throw InputError("word uses an edge not in the presentation");
    Subgroup out;
    for (std::size_t k = 0; k < a.group().order(); ++k) {
        bool fixes = std::all_of(w.edges.begin(), w.edges.end(), [&](const Edge& e) { return a.act(k, e.from) == e.from; });
        if (fixes) out.push_back(k);
    }
    return out;
}

/// Same action on the transposed presentation.
inline PermutationAction transpose_action(const PermutationAction& a) {
    return validate_action(SftPresentation(a.matrix().transpose()), a.group());
}

/// Permutation matrix P with P(i, g i) = 1.
inline RectMatrix permutation_matrix(const Permutation& p) {
    RectMatrix m(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m.set(i, p[i], 1);
    return m;
}

}  // namespace gsft
