#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsft/action.hpp"
#include "gsft/error.hpp"
#include "gsft/matrix.hpp"
#include "gsft/sft.hpp"

namespace gsft {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Matrix on G-orbits of states together with the selector matrices
/// U (orbits x states, picks the least member) and V (states x orbits,
/// orbit membership), so that U V = I and, on the right side, matrix = U A V.
struct ReducedShift {
    Side side = Side::right;
    IntMatrix matrix;
    RectMatrix selector_u;
    RectMatrix selector_v;
    std::vector<std::vector<std::size_t>> orbits;
};

namespace detail {

/// Reduction of an arbitrary nonnegative matrix along a G-invariant
/// partition. Each entry is recomputed from every orbit member, so a
/// partition that is not invariant is reported instead of silently used.
inline ReducedShift reduce_by_orbits(const IntMatrix& a, const std::vector<std::vector<std::size_t>>& orbits, Side side) {
    const std::size_t n = a.dim(), m = orbits.size();
    std::vector<std::size_t> orbit_of(n, m);
    for (std::size_t o = 0; o < m; ++o)
        for (auto i : orbits[o]) orbit_of[i] = o;
    ReducedShift r;
    r.side = side;
    r.orbits = orbits;
    r.selector_u = RectMatrix(m, n);
    r.selector_v = RectMatrix(n, m);
    for (std::size_t o = 0; o < m; ++o) r.selector_u.set(o, orbits[o].front(), 1);
    for (std::size_t i = 0; i < n; ++i) r.selector_v.set(i, orbit_of[i], 1);

    IntMatrix out(m);
    for (std::size_t o1 = 0; o1 < m; ++o1)
        for (std::size_t o2 = 0; o2 < m; ++o2) {
            // right: sum over k in o2 of A(i, k), i in o1; left: sum over k in o1 of A(k, j), j in o2
            const auto& members = side == Side::right ? orbits[o1] : orbits[o2];
            const auto& summed = side == Side::right ? orbits[o2] : orbits[o1];
            std::optional<BigInt> value;
            for (auto fixed : members) {
                BigInt s = 0;
                for (auto k : summed) s += side == Side::right ? a(fixed, k) : a(k, fixed);
                if (!value)
                    value = s;
                else if (*value != s)
                    throw PreconditionError(std::string(to_string(side)) + " reduction depends on the representative at orbit pair (" +
                                            std::to_string(o1 + 1) + "," + std::to_string(o2 + 1) + ")");
            }
            out.set(o1, o2, *value);
        }
    std::vector<std::string> labels;
    for (const auto& orbit : orbits) labels.push_back(a.label(orbit.front()));
    out.set_labels(std::move(labels));
    r.matrix = std::move(out);
    return r;
}

}  // namespace detail

inline ReducedShift right_reduce(const PermutationAction& a) {
    return detail::reduce_by_orbits(a.matrix(), orbit_structure(a).orbits, Side::right);
}

inline ReducedShift left_reduce(const PermutationAction& a) {
    return detail::reduce_by_orbits(a.matrix(), orbit_structure(a).orbits, Side::left);
}

/// Left reduction of the transposed action equals the transposed right reduction.
inline bool transpose_duality_check(const PermutationAction& a) {
    auto left_of_transpose = left_reduce(transpose_action(a)).matrix;
    auto right = right_reduce(a).matrix;
    return static_cast<const RectMatrix&>(left_of_transpose) == right.RectMatrix::transpose();
}

/// One-block code between edge shifts, as a total map on the source edge alphabet.
class OneBlockCode {
public:
    OneBlockCode() = default;

    OneBlockCode(SftPresentation source, SftPresentation target, std::vector<Edge> source_edges, std::vector<Edge> images)
        : source_(std::move(source)), target_(std::move(target)), edges_(std::move(source_edges)), images_(std::move(images)) {
        if (edges_.size() != images_.size()) throw InputError("edge map is not total");
        if (!std::is_sorted(edges_.begin(), edges_.end())) throw InputError("edge map keys must be sorted");
        for (const auto& e : edges_)
            if (!source_.has_edge(e)) throw InputError("edge map key is not a source edge");
        for (const auto& e : images_)
            if (!target_.has_edge(e)) throw InputError("edge map image is not a target edge");
    }

    /// Code induced by a state map between 0-1 presentations.
    static OneBlockCode from_state_map(const SftPresentation& source, const SftPresentation& target,
                                       const std::vector<std::size_t>& state_map) {
        if (state_map.size() != source.dim()) throw InputError("state map has the wrong size");
        if (!source.matrix().is_zero_one() || !target.matrix().is_zero_one())
            throw InputError("state maps induce edge maps only between 0-1 presentations");
        std::vector<Edge> edges = source.edges(), images;
        for (const auto& e : edges) {
            Edge img{static_cast<std::uint32_t>(state_map[e.from]), static_cast<std::uint32_t>(state_map[e.to]), 0};
            if (!target.has_edge(img))
                throw PreconditionError("state map sends edge (" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) +
                                        ") to a non-edge");
            images.push_back(img);
        }
        return OneBlockCode(source, target, std::move(edges), std::move(images));
    }

    static OneBlockCode identity(const SftPresentation& p) {
        auto edges = p.edges();
        return OneBlockCode(p, p, edges, edges);
    }

    const SftPresentation& source() const { return source_; }
    const SftPresentation& target() const { return target_; }
    const std::vector<Edge>& source_edges() const { return edges_; }
    const std::vector<Edge>& images() const { return images_; }

    const Edge& operator()(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) throw InputError("edge not in the source alphabet");
        return images_[static_cast<std::size_t>(it - edges_.begin())];
    }

    /// First pair of distinct edges with a common initial state and equal
    /// images, if any.
    std::optional<std::pair<Edge, Edge>> right_resolving_witness() const {
        std::map<std::pair<std::uint32_t, Edge>, Edge> seen;
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            auto [it, fresh] = seen.emplace(std::make_pair(edges_[k].from, images_[k]), edges_[k]);
            if (!fresh) return std::make_pair(it->second, edges_[k]);
        }
        return std::nullopt;
    }

    bool is_right_resolving() const { return !right_resolving_witness(); }

    /// Composable source 2-blocks go to composable target 2-blocks.
    bool respects_adjacency() const {
        for (std::size_t a = 0; a < edges_.size(); ++a)
            for (std::size_t b = 0; b < edges_.size(); ++b)
                if (edges_[a].to == edges_[b].from && images_[a].to != images_[b].from) return false;
        return true;
    }

    bool is_onto_edges() const {
        auto img = images_;
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return img == target_.edges();
    }

    Path apply(const Path& p) const {
        Path out;
        for (const auto& e : p.edges) out.edges.push_back((*this)(e));
        return out;
    }

    /// Composition: other after this.
    OneBlockCode then(const OneBlockCode& other) const {
        std::vector<Edge> imgs;
        for (const auto& e : images_) imgs.push_back(other(e));
        return OneBlockCode(source_, other.target_, edges_, std::move(imgs));
    }

    friend bool operator==(const OneBlockCode& a, const OneBlockCode& b) {
        return a.edges_ == b.edges_ && a.images_ == b.images_;
    }

private:
    SftPresentation source_;
    SftPresentation target_;
    std::vector<Edge> edges_;
    std::vector<Edge> images_;
};

/// Right-resolving factor map from the action's shift onto its right reduced
/// shift. Edges from state i into orbit Gj, ordered by terminal state, are
/// sent to the parallel edges Gi -> Gj with copy index 0, 1, 2, ...
inline OneBlockCode build_eta(const PermutationAction& a) {
    auto reduced = right_reduce(a);
    auto orbits = orbit_structure(a);
    SftPresentation target(reduced.matrix);
    std::vector<Edge> edges = a.presentation().edges(), images;
    std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> next_copy;
    for (const auto& e : edges) {
        std::size_t oi = orbits.orbit_of[e.from], oj = orbits.orbit_of[e.to];
        std::uint32_t c = next_copy[{e.from, oj}]++;
        images.push_back({static_cast<std::uint32_t>(oi), static_cast<std::uint32_t>(oj), c});
    }
    return OneBlockCode(a.presentation(), std::move(target), std::move(edges), std::move(images));
}

}  // namespace gsft
