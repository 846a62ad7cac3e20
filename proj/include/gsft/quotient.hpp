#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsft/action.hpp"
#include "gsft/error.hpp"
#include "gsft/matrix.hpp"
#include "gsft/polynomial.hpp"
#include "gsft/reduce.hpp"
#include "gsft/sft.hpp"
#include "gsft/smith.hpp"

namespace gsft {

/// Orbit counts N_1..N_m of G on periodic points, N_n = (1/|G|) sum_g tr(A_g^n).
struct OrbitCountReport {
    std::vector<BigInt> counts;
    /// sum_g tr(A_g^n), n = 1..m.
    std::vector<BigInt> sums;
    /// traces[g][n-1] = tr(A_g^n).
    std::vector<std::vector<BigInt>> traces;
    /// lcm of det(I - t A_g); annihilates the sequence of sums.
    IntPolynomial recurrence;
    std::size_t group_order = 1;
};

namespace detail {

/// Traces of A^1..A^m by successive multiplication.
inline std::vector<BigInt> trace_sequence(const IntMatrix& a, std::size_t m) {
    std::vector<BigInt> out;
    IntMatrix p = a;
    for (std::size_t n = 1; n <= m; ++n) {
        out.push_back(p.trace());
        if (n < m) p = p * a;
    }
    return out;
}

/// Orbit counts over an arbitrary list of state permutations (used with the
/// group elements of an action, possibly with repeats).
inline OrbitCountReport burnside_over(const IntMatrix& a, const std::vector<Permutation>& elements, std::size_t m) {
    if (m == 0) throw InputError("need at least one term");
    OrbitCountReport r;
    r.group_order = elements.size();
    r.sums.assign(m, 0);
    std::vector<IntPolynomial> polys;
    for (const auto& g : elements) {
        std::vector<std::size_t> fixed;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (g[i] == i) fixed.push_back(i);
        IntMatrix ag = fixed.empty() ? IntMatrix(1) : a.principal_submatrix(fixed);
        r.traces.push_back(trace_sequence(ag, m));
        for (std::size_t n = 0; n < m; ++n) r.sums[n] += r.traces.back()[n];
        polys.push_back(char_poly_reciprocal(ag));
    }
    for (std::size_t n = 0; n < m; ++n) {
        if (r.sums[n] % BigInt(r.group_order) != 0)
            throw PreconditionError("Burnside sum " + r.sums[n].str() + " at n = " + std::to_string(n + 1) +
                                    " is not divisible by the group order " + std::to_string(r.group_order));
        r.counts.push_back(r.sums[n] / BigInt(r.group_order));
    }
    r.recurrence = poly_lcm(polys);
    return r;
}

}  // namespace detail

inline OrbitCountReport burnside_counts(const PermutationAction& a, std::size_t m) {
    return detail::burnside_over(a.matrix(), a.group().elements(), m);
}

/// True when sum_k q_k s_{n-k} = 0 for every n with deg(q) < n <= len(s).
/// s[0] holds s_1.
inline bool recurrence_annihilates(const IntPolynomial& q, const std::vector<BigInt>& s) {
    const long d = q.degree();
    if (d < 0) return false;
    for (long n = d + 1; n <= static_cast<long>(s.size()); ++n) {
        BigInt acc = 0;
        for (long k = 0; k <= d; ++k) acc += q.coeff(static_cast<std::size_t>(k)) * s[static_cast<std::size_t>(n - k - 1)];
        if (acc != 0) return false;
    }
    return true;
}

/// G-orbits on period-n points by explicit enumeration.
inline std::vector<BigInt> brute_orbit_counts(const PermutationAction& a, std::size_t m, std::size_t cap = default_cap) {
    std::vector<BigInt> out;
    for (std::size_t n = 1; n <= m; ++n) {
        std::set<std::vector<Edge>> canon;
        for (const auto& c : enumerate_cycles(a.presentation(), n, cap)) {
            std::vector<Edge> best = c.edges;
            for (std::size_t g = 1; g < a.group().order(); ++g) {
                std::vector<Edge> moved;
                for (const auto& e : c.edges) moved.push_back(a.act(g, e));
                best = std::min(best, moved);
            }
            canon.insert(std::move(best));
        }
        out.push_back(BigInt(canon.size()));
    }
    return out;
}

/// Points [x] of the quotient with sigma^n [x] = [x], n = 1..m. Each solution
/// of sigma^n x = g x is generated directly from its first n states
/// (x_{k+n} = g x_k) and stored as one period of length n * exponent(G).
inline std::vector<BigInt> quotient_period_counts(const PermutationAction& a, std::size_t m, std::size_t cap = default_cap) {
    const auto& mat = a.matrix();
    const std::size_t dim = mat.dim(), e = a.group().exponent();
    std::vector<BigInt> out;
    for (std::size_t n = 1; n <= m; ++n) {
        // reach[r][v][s]: s reachable from v in exactly r steps
        std::vector<std::vector<std::vector<char>>> reach(n + 1, std::vector<std::vector<char>>(dim, std::vector<char>(dim, 0)));
        for (std::size_t v = 0; v < dim; ++v) reach[0][v][v] = 1;
        for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t v = 0; v < dim; ++v)
                for (std::size_t w = 0; w < dim; ++w)
                    if (mat(v, w) != 0)
                        for (std::size_t s = 0; s < dim; ++s)
                            if (reach[r - 1][w][s]) reach[r][v][s] = 1;

        std::set<std::vector<std::uint32_t>> points;
        std::size_t generated = 0;
        std::vector<std::uint32_t> prefix;
        for (std::size_t g = 0; g < a.group().order(); ++g) {
            const auto& perm = a.group().element(g);
            for (std::uint32_t v0 = 0; v0 < dim; ++v0) {
                const std::size_t target = perm[v0];
                if (!reach[n][v0][target]) continue;
                prefix = {v0};
                auto dfs = [&](auto&& self) -> void {
                    if (prefix.size() == n) {
                        if (mat(prefix.back(), target) == 0) return;
                        if (++generated > cap)
                            throw CapExceeded("more than " + std::to_string(cap) + " quotient periodic representatives at n = " +
                                              std::to_string(n));
                        std::vector<std::uint32_t> period(prefix);
                        period.reserve(n * e);
                        while (period.size() < n * e) period.push_back(perm[period[period.size() - n]]);
                        points.insert(std::move(period));
                        return;
                    }
                    for (std::uint32_t w = 0; w < dim; ++w) {
                        if (mat(prefix.back(), w) == 0 || !reach[n - prefix.size()][w][target]) continue;
                        prefix.push_back(w);
                        self(self);
                        prefix.pop_back();
                    }
                };
                dfs(dfs);
            }
        }
        std::set<std::vector<std::uint32_t>> orbits;
        for (const auto& p : points) {
            std::vector<std::uint32_t> best = p;
            for (std::size_t g = 1; g < a.group().order(); ++g) {
                std::vector<std::uint32_t> moved;
                for (auto s : p) moved.push_back(a.act(g, s));
                best = std::min(best, moved);
            }
            orbits.insert(std::move(best));
        }
        out.push_back(BigInt(orbits.size()));
    }
    return out;
}

enum class Verdict { constant_to_one, nonexpansive };

inline const char* to_string(Verdict v) { return v == Verdict::constant_to_one ? "constant-to-one" : "nonexpansive"; }

struct QuotientClassification {
    Verdict verdict = Verdict::constant_to_one;
    Subgroup kernel;
    /// For nonexpansive: an element outside the kernel and a cycle on states it fixes.
    std::optional<std::size_t> element;
    CycleWord cycle;
};

namespace detail {

inline void require_irreducible(const PermutationAction& a) {
    if (a.dim() == 0 || !is_irreducible(a.presentation()))
        throw PreconditionError("classification needs an irreducible presentation");
}

/// Shortest cycle through `start` as a cycle word of the 0-1 presentation.
inline CycleWord shortest_cycle(const IntMatrix& m, std::size_t start) {
    auto path = shortest_path(m, start, start);
    CycleWord w;
    for (std::size_t k = 1; k < path.size(); ++k)
        w.edges.push_back({static_cast<std::uint32_t>(path[k - 1]), static_cast<std::uint32_t>(path[k]), 0});
    return w;
}

}  // namespace detail

/// Constant-to-one unless some g outside the kernel fixes a cycle.
inline QuotientClassification classify_quotient(const PermutationAction& a) {
    detail::require_irreducible(a);
    QuotientClassification c;
    c.kernel = orbit_structure(a).kernel;
    for (std::size_t g = 0; g < a.group().order(); ++g) {
        if (std::binary_search(c.kernel.begin(), c.kernel.end(), g)) continue;
        auto fixed = fixed_states(a, g);
        if (fixed.empty()) continue;
        auto trimmed = trim_essential(a.matrix().principal_submatrix(fixed));
        if (trimmed.empty()) continue;
        auto local = detail::shortest_cycle(trimmed.matrix(), 0);
        for (auto& e : local.edges) {
            e.from = static_cast<std::uint32_t>(fixed[trimmed.origin()[e.from]]);
            e.to = static_cast<std::uint32_t>(fixed[trimmed.origin()[e.to]]);
        }
        c.verdict = Verdict::nonexpansive;
        c.element = g;
        c.cycle = std::move(local);
        return c;
    }
    return c;
}

/// Exhaustive check over all cycles of length <= max_length: true iff every
/// cycle's stabilizer equals the kernel. A branch is abandoned once its
/// running stabilizer is the kernel, since extending it cannot enlarge it.
inline bool stabilizer_scan(const PermutationAction& a, std::size_t max_length, std::size_t cap = default_cap) {
    const auto& m = a.matrix();
    const auto orbits = orbit_structure(a);
    std::size_t visited = 0;
    bool all_kernel = true;
    std::vector<std::size_t> path;
    auto dfs = [&](auto&& self, const Subgroup& stab) -> void {
        if (!all_kernel) return;
        if (stab == orbits.kernel) return;
        if (++visited > cap) throw CapExceeded("stabilizer scan visited more than " + std::to_string(cap) + " paths");
        if (m(path.back(), path.front()) != 0) {
            all_kernel = false;
            return;
        }
        if (path.size() == max_length) return;
        for (std::size_t w = 0; w < m.dim(); ++w) {
            if (m(path.back(), w) == 0) continue;
            Subgroup next;
            std::set_intersection(stab.begin(), stab.end(), orbits.stabilizers[w].begin(), orbits.stabilizers[w].end(),
                                  std::back_inserter(next));
            path.push_back(w);
            self(self, next);
            path.pop_back();
        }
    };
    for (std::size_t s = 0; s < m.dim() && all_kernel; ++s) {
        path = {s};
        dfs(dfs, orbits.stabilizers[s]);
    }
    return all_kernel;
}

/// Point pair showing the quotient is not expansive: x and y lie in
/// different G-orbits while every (2m+1)-block of y matches the block of x
/// or of g x at the same place. Words are state sequences.
struct NonexpansiveWitness {
    std::vector<std::size_t> u, v, w, w_prime;
    std::size_t element = 0;
    std::size_t m = 0;
    /// Windows tail + w' + u^(2m+1) + w + tail, tails of length max(2m+1, |v|).
    std::vector<std::size_t> x_window, y_window;
    /// Offset of the u block inside the windows.
    std::size_t u_offset = 0;
};

namespace detail {

inline bool is_state_path(const IntMatrix& m, const std::vector<std::size_t>& s) {
    for (std::size_t k = 1; k < s.size(); ++k)
        if (m(s[k - 1], s[k]) == 0) return false;
    return true;
}

}  // namespace detail

inline NonexpansiveWitness nonexpansive_witness(const PermutationAction& a, const QuotientClassification& c, std::size_t m) {
    if (c.verdict != Verdict::nonexpansive || !c.element)
        throw PreconditionError("no nonexpansive witness: the quotient map is constant-to-one");
    detail::require_irreducible(a);
    const auto& mat = a.matrix();
    const std::size_t g = *c.element;
    NonexpansiveWitness wit;
    wit.element = g;
    wit.m = m;
    auto cycle_states = c.cycle.states();
    wit.u.assign(cycle_states.begin(), cycle_states.end());
    if (wit.u.empty() || !c.cycle.closes()) throw InputError("classification carries no witness cycle");
    for (auto s : wit.u)
        if (a.act(g, s) != s) throw InputError("witness cycle is not fixed by the witness element");

    // v runs through every state: shortest hops 0 -> 1 -> ... -> n-1 -> 0
    for (std::size_t s = 0; s < mat.dim(); ++s) {
        auto hop = detail::shortest_path(mat, s, (s + 1) % mat.dim());
        wit.v.insert(wit.v.end(), hop.begin(), hop.end() - 1);
    }
    auto inner = [](std::vector<std::size_t> p) { return std::vector<std::size_t>(p.begin() + 1, p.end() - 1); };
    wit.w = inner(detail::shortest_path(mat, wit.u.back(), wit.v.front()));
    wit.w_prime = inner(detail::shortest_path(mat, wit.v.back(), wit.u.front()));

    const std::size_t q = wit.v.size(), tail = std::max(2 * m + 1, q);
    std::vector<std::size_t> left, core, right;
    for (std::size_t k = 0; k < tail; ++k) left.push_back(wit.v[(q - tail % q + k) % q]);
    core.insert(core.end(), wit.w_prime.begin(), wit.w_prime.end());
    wit.u_offset = left.size() + core.size();
    for (std::size_t r = 0; r < 2 * m + 1; ++r) core.insert(core.end(), wit.u.begin(), wit.u.end());
    for (std::size_t k = 0; k < tail; ++k) right.push_back(wit.v[k % q]);

    wit.x_window = left;
    wit.x_window.insert(wit.x_window.end(), core.begin(), core.end());
    wit.y_window = wit.x_window;
    for (auto s : wit.w) {
        wit.x_window.push_back(s);
        wit.y_window.push_back(a.act(g, s));
    }
    for (auto s : right) {
        wit.x_window.push_back(s);
        wit.y_window.push_back(a.act(g, s));
    }

    if (!detail::is_state_path(mat, wit.x_window) || !detail::is_state_path(mat, wit.y_window))
        throw PreconditionError("witness windows are not paths");
    for (std::size_t h = 0; h < a.group().order(); ++h) {
        std::vector<std::size_t> moved;
        for (auto s : wit.x_window) moved.push_back(a.act(h, s));
        if (moved == wit.y_window) throw PreconditionError("witness points lie in the same orbit");
    }
    const std::size_t block = 2 * m + 1;
    for (std::size_t off = 0; off + block <= wit.x_window.size(); ++off) {
        bool same_x = true, same_gx = true;
        for (std::size_t k = off; k < off + block; ++k) {
            if (wit.y_window[k] != wit.x_window[k]) same_x = false;
            if (wit.y_window[k] != a.act(g, wit.x_window[k])) same_gx = false;
        }
        if (!same_x && !same_gx) throw PreconditionError("witness blocks disagree at offset " + std::to_string(off));
    }
    return wit;
}

/// For a constant-to-one quotient: both reduced matrices share det(I - tA)
/// and the Bowen-Franks group, and the quotient's periodic counts for
/// n <= max_n equal the trace powers of both.
inline bool constant_to_one_check(const PermutationAction& a, std::size_t max_n = 8, std::size_t cap = default_cap) {
    auto c = classify_quotient(a);
    if (c.verdict != Verdict::constant_to_one)
        throw PreconditionError("constant-to-one check does not apply: the quotient is nonexpansive");
    auto right = right_reduce(a).matrix, left = left_reduce(a).matrix;
    if (!(char_poly_reciprocal(right) == char_poly_reciprocal(left))) return false;
    auto bf_r = bowen_franks(right), bf_l = bowen_franks(left);
    if (bf_r.torsion != bf_l.torsion || bf_r.free_rank != bf_l.free_rank) return false;
    auto counts = quotient_period_counts(a, max_n, cap);
    for (std::size_t n = 1; n <= max_n; ++n)
        if (counts[n - 1] != trace_of_power(right, n) || counts[n - 1] != trace_of_power(left, n)) return false;
    return true;
}

}  // namespace gsft
