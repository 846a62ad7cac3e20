#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "gsft/error.hpp"
#include "gsft/matrix.hpp"

namespace gsft {

/// Edge (from, to, c) with 0 <= c < A(from, to). Edges order lexicographically.
struct Edge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint32_t copy = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite path of composable edges.
struct Path {
    std::vector<Edge> edges;

    std::size_t length() const { return edges.size(); }

    /// State sequence s_0, ..., s_n (one more state than edges).
    std::vector<std::uint32_t> states() const {
        std::vector<std::uint32_t> s;
        if (edges.empty()) return s;
        s.push_back(edges.front().from);
        for (const auto& e : edges) s.push_back(e.to);
        return s;
    }

    bool composes() const {
        for (std::size_t k = 1; k < edges.size(); ++k)
            if (edges[k - 1].to != edges[k].from) return false;
        return true;
    }

    friend auto operator<=>(const Path&, const Path&) = default;
};

/// Closed path. Each starting phase is a distinct periodic point, so words
/// are stored as enumerated; canonical_rotation() gives the least rotation.
struct CycleWord {
    std::vector<Edge> edges;

    std::size_t length() const { return edges.size(); }

    /// States visited, one per edge (initial states).
    std::vector<std::uint32_t> states() const {
        std::vector<std::uint32_t> s;
        s.reserve(edges.size());
        for (const auto& e : edges) s.push_back(e.from);
        return s;
    }

    bool closes() const {
        if (edges.empty()) return false;
        for (std::size_t k = 0; k < edges.size(); ++k)
            if (edges[k].to != edges[(k + 1) % edges.size()].from) return false;
        return true;
    }

    CycleWord canonical_rotation() const {
        CycleWord best = *this;
        for (std::size_t r = 1; r < edges.size(); ++r) {
            CycleWord rot;
            rot.edges.insert(rot.edges.end(), edges.begin() + r, edges.end());
            rot.edges.insert(rot.edges.end(), edges.begin(), edges.begin() + r);
            if (rot.edges < best.edges) best = std::move(rot);
        }
        return best;
    }

    friend auto operator<=>(const CycleWord&, const CycleWord&) = default;
};

/// SFT presentation in essential form: every state has a follower and a
/// predecessor. The empty presentation (dimension 0) is a legal value.
class SftPresentation {
public:
    SftPresentation() = default;

    /// Requires essential form; use trim_essential for arbitrary matrices.
    explicit SftPresentation(IntMatrix matrix, std::vector<std::size_t> origin = {})
        : matrix_(std::move(matrix)), origin_(std::move(origin)) {
        if (origin_.empty())
            for (std::size_t i = 0; i < matrix_.dim(); ++i) origin_.push_back(i);
        if (origin_.size() != matrix_.dim()) throw InputError("origin map size does not match dimension");
        for (std::size_t i = 0; i < matrix_.dim(); ++i) {
            if (matrix_.out_degree(i) == 0)
                throw PreconditionError("state " + matrix_.label(i) + " has no follower (presentation not essential)");
            if (matrix_.in_degree(i) == 0)
                throw PreconditionError("state " + matrix_.label(i) + " has no predecessor (presentation not essential)");
        }
    }

    const IntMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }
    bool empty() const { return matrix_.dim() == 0; }
    /// Index of each state in the matrix this presentation was trimmed from.
    const std::vector<std::size_t>& origin() const { return origin_; }

    /// Edge alphabet in lexicographic order.
    std::vector<Edge> edges(std::size_t cap = default_cap) const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) {
                std::uint64_t m = to_count(matrix_(i, j));
                if (out.size() + m > cap) throw CapExceeded("edge alphabet exceeds cap " + std::to_string(cap));
                for (std::uint64_t c = 0; c < m; ++c)
                    out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(c)});
            }
        return out;
    }

    bool has_edge(const Edge& e) const {
        return e.from < dim() && e.to < dim() && BigInt(e.copy) < matrix_(e.from, e.to);
    }

private:
    IntMatrix matrix_;
    std::vector<std::size_t> origin_;
};

/// Repeatedly deletes states lacking a follower or a predecessor.
inline SftPresentation trim_essential(const IntMatrix& matrix) {
    const std::size_t n = matrix.dim();
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            bool out = false, in = false;
            for (std::size_t j = 0; j < n && !(out && in); ++j) {
                if (!alive[j]) continue;
                if (matrix(i, j) != 0) out = true;
                if (matrix(j, i) != 0) in = true;
            }
            if (!out || !in) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) kept.push_back(i);
    return SftPresentation(matrix.principal_submatrix(kept), kept);
}

namespace detail {

inline std::vector<bool> reachable(const IntMatrix& m, std::size_t start, bool forward) {
    std::vector<bool> seen(m.dim(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w = 0; w < m.dim(); ++w) {
            const BigInt& e = forward ? m(v, w) : m(w, v);
            if (e != 0 && !seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

/// Shortest path (as a state sequence, endpoints included) from `from` to
/// `to` using at least one edge. Empty when unreachable.
inline std::vector<std::size_t> shortest_path(const IntMatrix& m, std::size_t from, std::size_t to) {
    const std::size_t n = m.dim();
    std::vector<std::size_t> parent(n, n);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t w = 0; w < n; ++w)
        if (m(from, w) != 0) {
            if (w == to) return {from, to};
            seen[w] = true;
            parent[w] = from;
            queue.push_back(w);
        }
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w = 0; w < n; ++w) {
            if (m(v, w) == 0 || seen[w]) continue;
            seen[w] = true;
            parent[w] = v;
            if (w == to) {
                std::vector<std::size_t> path{to};
                std::size_t cur = to;
                do {
                    cur = parent[cur];
                    path.push_back(cur);
                } while (cur != from || path.size() == 1);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return {};
}

}  // namespace detail

/// Strong connectivity of the underlying digraph.
inline bool is_irreducible(const SftPresentation& p) {
    if (p.empty()) throw PreconditionError("irreducibility is undefined for the empty presentation");
    auto fwd = detail::reachable(p.matrix(), 0, true);
    auto bwd = detail::reachable(p.matrix(), 0, false);
    return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
           std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

struct HigherBlock {
    SftPresentation presentation;
    /// Underlying n-block (state sequence) of each new state.
    std::vector<std::vector<std::size_t>> blocks;
};

/// n-block presentation of a 0-1 presentation: states are the n-blocks,
/// b -> b' when b' continues b by one symbol.
inline HigherBlock higher_block(const SftPresentation& p, std::size_t n, std::size_t cap = default_cap) {
    if (n < 2) throw InputError("higher_block needs n >= 2");
    if (!p.matrix().is_zero_one()) throw InputError("higher_block needs a 0-1 matrix (entry > 1 present)");
    const auto& a = p.matrix();
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> cur;
    auto extend = [&](auto&& self) -> void {
        if (cur.size() == n) {
            if (blocks.size() >= cap) throw CapExceeded("higher_block: more than " + std::to_string(cap) + " blocks");
            blocks.push_back(cur);
            return;
        }
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (cur.empty() || a(cur.back(), j) != 0) {
                cur.push_back(j);
                self(self);
                cur.pop_back();
            }
    };
    extend(extend);

    // index blocks by their (n-1)-prefix for the overlap relation
    IntMatrix m(blocks.size());
    std::vector<std::vector<std::size_t>> by_prefix;
    std::vector<std::vector<std::size_t>> prefixes;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::vector<std::size_t> prefix(blocks[k].begin(), blocks[k].end() - 1);
        if (prefixes.empty() || prefixes.back() != prefix) {
            prefixes.push_back(prefix);
            by_prefix.emplace_back();
        }
        by_prefix.back().push_back(k);
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::vector<std::size_t> suffix(blocks[k].begin() + 1, blocks[k].end());
        auto it = std::lower_bound(prefixes.begin(), prefixes.end(), suffix);
        if (it == prefixes.end() || *it != suffix) continue;
        for (std::size_t t : by_prefix[static_cast<std::size_t>(it - prefixes.begin())]) m.set(k, t, 1);
    }
    std::vector<std::string> labels;
    for (const auto& b : blocks) {
        std::string l;
        for (std::size_t s : b) l += (l.empty() ? "" : ".") + a.label(s);
        labels.push_back(l);
    }
    m.set_labels(std::move(labels));
    return {SftPresentation(std::move(m)), std::move(blocks)};
}

/// All closed paths of exactly `length` edges, lexicographic in the edge
/// sequence. Their number is trace(A^length).
inline std::vector<CycleWord> enumerate_cycles(const SftPresentation& p, std::size_t length, std::size_t cap = default_cap) {
    if (length == 0) throw InputError("cycle length must be positive");
    const std::size_t n = p.dim();
    std::vector<CycleWord> out;
    if (n == 0) return out;

    // successor lists with multiplicities
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> succ(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p.matrix()(i, j) != 0) succ[i].push_back({static_cast<std::uint32_t>(j), to_count(p.matrix()(i, j))});

    // can_reach[r][v][s]: s reachable from v in exactly r steps
    std::vector<std::vector<std::vector<char>>> can_reach(length + 1, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
    for (std::size_t v = 0; v < n; ++v) can_reach[0][v][v] = 1;
    for (std::size_t r = 1; r <= length; ++r)
        for (std::size_t v = 0; v < n; ++v)
            for (auto [w, mult] : succ[v])
                for (std::size_t s = 0; s < n; ++s)
                    if (can_reach[r - 1][w][s]) can_reach[r][v][s] = 1;

    std::vector<Edge> path;
    path.reserve(length);
    for (std::uint32_t start = 0; start < n; ++start) {
        if (!can_reach[length][start][start]) continue;
        auto dfs = [&](auto&& self, std::uint32_t v) -> void {
            if (path.size() == length) {
                if (v != start) return;
                if (out.size() >= cap)
                    throw CapExceeded("more than " + std::to_string(cap) + " cycles of length " + std::to_string(length));
                out.push_back(CycleWord{path});
                return;
            }
            std::size_t remaining = length - path.size() - 1;
            for (auto [w, mult] : succ[v]) {
                if (!can_reach[remaining][w][start]) continue;
                for (std::uint64_t c = 0; c < mult; ++c) {
                    path.push_back({v, w, static_cast<std::uint32_t>(c)});
                    self(self, w);
                    path.pop_back();
                }
            }
        };
        dfs(dfs, start);
    }
    return out;
}

}  // namespace gsft
