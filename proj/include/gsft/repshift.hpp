#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gsft/action.hpp"
#include "gsft/error.hpp"
#include "gsft/group_table.hpp"
#include "gsft/polynomial.hpp"
#include "gsft/quotient.hpp"
#include "gsft/reduce.hpp"
#include "gsft/sft.hpp"

namespace gsft {

/// HNN input: a base group B on b_gens generators with relators, subgroups
/// U and V given by words over B (and presentations in their own
/// generators), and the amalgamating map U -> V as images of U's generators.
struct HnnData {
    std::size_t b_gens = 0;
    std::vector<GroupWord> b_relators;
    std::vector<GroupWord> u_gens;
    std::vector<GroupWord> u_relators;
    std::vector<GroupWord> v_gens;
    std::vector<GroupWord> v_relators;
    std::vector<GroupWord> amalgamating_images;

    void validate() const {
        if (amalgamating_images.size() != u_gens.size())
            throw InputError("amalgamating map has " + std::to_string(amalgamating_images.size()) + " images for " +
                             std::to_string(u_gens.size()) + " generators of U");
        auto check = [](const std::vector<GroupWord>& words, std::size_t gens, const char* what) {
            for (const auto& w : words)
                if (w.max_generator() > gens)
                    throw InputError(std::string(what) + " word '" + w.to_string() + "' uses an undeclared generator");
        };
        check(b_relators, b_gens, "B relator");
        check(u_gens, b_gens, "U generator");
        check(v_gens, b_gens, "V generator");
        check(amalgamating_images, b_gens, "amalgamating image");
        check(u_relators, u_gens.size(), "U relator");
        check(v_relators, v_gens.size(), "V relator");
    }

    friend bool operator==(const HnnData&, const HnnData&) = default;
};

/// Fibered genus-one presets: B = U = V free of rank 2 with the named monodromy.
struct FiberedPreset {
    std::string name;
    HnnData data;
    /// det(I - tM) of the abelianized monodromy, equal to the Alexander polynomial.
    IntPolynomial alexander;
};

/// Exponent-sum matrix of the amalgamating map on B's generators (column k
/// is the abelianized image of U-generator k); only meaningful when U = B.
inline RectMatrix abelianized_monodromy(const HnnData& h) {
    RectMatrix m(h.b_gens, h.amalgamating_images.size(), true);
    for (std::size_t k = 0; k < h.amalgamating_images.size(); ++k)
        for (const auto& l : h.amalgamating_images[k].letters) m.add(l.generator, k, l.sign);
    return m;
}

inline FiberedPreset fibered_preset(const std::string& name) {
    auto words = [](std::initializer_list<const char*> ws) {
        std::vector<GroupWord> out;
        for (const char* w : ws) out.push_back(GroupWord::parse(w));
        return out;
    };
    FiberedPreset p;
    p.name = name;
    p.data.b_gens = 2;
    p.data.u_gens = words({"a", "b"});
    p.data.v_gens = words({"a", "b"});
    if (name == "trefoil") {
        p.data.amalgamating_images = words({"b", "Ab"});
        p.alexander = IntPolynomial{1, -1, 1};
    } else if (name == "figure8") {
        p.data.amalgamating_images = words({"aba", "ba"});
        p.alexander = IntPolynomial{1, -3, 1};
    } else {
        throw InputError("unknown preset '" + name + "' (use trefoil or figure8)");
    }
    if (!(char_poly_reciprocal(abelianized_monodromy(p.data)) == p.alexander))
        throw PreconditionError("preset '" + name + "' fails its Alexander polynomial self-check");
    return p;
}

/// States are homomorphisms U -> G (image tuples of U's generators), edges
/// are homomorphisms B -> G. Edge rho runs from rho|U to rho|V o amalgamating
/// map. Conjugation by G acts on states and edges.
struct RepShift {
    FiniteGroupTable group;
    HnnData data;
    /// Surviving states after trimming, and their image tuples.
    std::vector<std::vector<std::size_t>> states;
    /// Edges between surviving states, with endpoints as state indices.
    std::vector<std::vector<std::size_t>> edges;
    std::vector<std::size_t> edge_from;
    std::vector<std::size_t> edge_to;
    /// State matrix (entries count edges).
    SftPresentation presentation;
    /// 0-1 presentation on edges (rho -> rho' when rho ends where rho' starts)
    /// with the conjugation action; used for periodic-point counting.
    PermutationAction edge_action;
    /// Conjugation orbits of states, ordered by least member.
    std::vector<std::vector<std::size_t>> state_orbits;
};

namespace detail {

inline std::string tuple_label(const FiniteGroupTable& g, const std::vector<std::size_t>& t) {
    std::string s = "[";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? ";" : "") + g.name(t[k]);
    return s + "]";
}

inline std::vector<std::size_t> conjugate_tuple(const FiniteGroupTable& g, const std::vector<std::size_t>& t, std::size_t c) {
    std::vector<std::size_t> out;
    for (auto x : t) out.push_back(g.conjugate(x, c));
    return out;
}

}  // namespace detail

inline RepShift build_repshift(const HnnData& h, const FiniteGroupTable& g, std::size_t limit = default_cap) {
    h.validate();
    auto all_states = enumerate_homs(h.u_gens.size(), h.u_relators, g, limit);
    auto all_edges = enumerate_homs(h.b_gens, h.b_relators, g, limit);
    std::map<std::vector<std::size_t>, std::size_t> state_index;
    for (std::size_t k = 0; k < all_states.size(); ++k) state_index[all_states[k]] = k;

    auto locate = [&](const std::vector<GroupWord>& words, const std::vector<std::size_t>& rho, const char* end) {
        std::vector<std::size_t> tuple;
        for (const auto& w : words) tuple.push_back(evaluate_word(w, rho, g));
        auto it = state_index.find(tuple);
        if (it == state_index.end()) {
            std::string failing = "?";
            for (const auto& r : h.u_relators)
                if (evaluate_word(r, tuple, g) != g.identity()) {
                    failing = r.to_string();
                    break;
                }
            throw PreconditionError(std::string(end) + " state " + detail::tuple_label(g, tuple) + " of edge " +
                                    detail::tuple_label(g, rho) + " is not a homomorphism of U (relator " + failing + " fails)");
        }
        return it->second;
    };
    std::vector<std::size_t> from, to;
    IntMatrix full(all_states.size());
    for (const auto& rho : all_edges) {
        from.push_back(locate(h.u_gens, rho, "initial"));
        to.push_back(locate(h.amalgamating_images, rho, "terminal"));
        full.add(from.back(), to.back(), 1);
    }
    std::vector<std::string> labels;
    for (const auto& s : all_states) labels.push_back(detail::tuple_label(g, s));
    full.set_labels(labels);

    RepShift r;
    r.group = g;
    r.data = h;
    r.presentation = trim_essential(full);
    std::vector<std::size_t> new_state(all_states.size(), all_states.size());
    for (std::size_t k = 0; k < r.presentation.origin().size(); ++k) {
        new_state[r.presentation.origin()[k]] = k;
        r.states.push_back(all_states[r.presentation.origin()[k]]);
    }
    for (std::size_t k = 0; k < all_edges.size(); ++k) {
        if (new_state[from[k]] == all_states.size() || new_state[to[k]] == all_states.size()) continue;
        r.edges.push_back(all_edges[k]);
        r.edge_from.push_back(new_state[from[k]]);
        r.edge_to.push_back(new_state[to[k]]);
    }

    // conjugation on states and edges, one permutation per group element
    std::map<std::vector<std::size_t>, std::size_t> live_state, live_edge;
    for (std::size_t k = 0; k < r.states.size(); ++k) live_state[r.states[k]] = k;
    for (std::size_t k = 0; k < r.edges.size(); ++k) live_edge[r.edges[k]] = k;
    std::vector<Permutation> state_perms, edge_perms;
    for (std::size_t c = 0; c < g.order(); ++c) {
        Permutation sp(r.states.size()), ep(r.edges.size());
        for (std::size_t k = 0; k < r.states.size(); ++k) {
            auto it = live_state.find(detail::conjugate_tuple(g, r.states[k], c));
            if (it == live_state.end()) throw PreconditionError("conjugation leaves the trimmed state set");
            sp[k] = static_cast<std::uint32_t>(it->second);
        }
        for (std::size_t k = 0; k < r.edges.size(); ++k) {
            auto it = live_edge.find(detail::conjugate_tuple(g, r.edges[k], c));
            if (it == live_edge.end()) throw PreconditionError("conjugation leaves the trimmed edge set");
            ep[k] = static_cast<std::uint32_t>(it->second);
        }
        const auto& m = r.presentation.matrix();
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j)
                if (m(sp[i], sp[j]) != m(i, j))
                    throw PreconditionError("conjugation by " + g.name(c) + " does not preserve the state matrix");
        state_perms.push_back(std::move(sp));
        edge_perms.push_back(std::move(ep));
    }

    IntMatrix edge_matrix(r.edges.size());
    std::vector<std::string> edge_labels;
    for (std::size_t a = 0; a < r.edges.size(); ++a) {
        edge_labels.push_back(detail::tuple_label(g, r.edges[a]));
        for (std::size_t b = 0; b < r.edges.size(); ++b)
            if (r.edge_to[a] == r.edge_from[b]) edge_matrix.set(a, b, 1);
    }
    edge_matrix.set_labels(std::move(edge_labels));
    std::sort(edge_perms.begin(), edge_perms.end());
    edge_perms.erase(std::unique(edge_perms.begin(), edge_perms.end()), edge_perms.end());
    r.edge_action = validate_action(SftPresentation(edge_matrix),
                                    PermGroup::from_generators(r.edges.size(), edge_perms, edge_perms.size()));

    std::vector<bool> seen(r.states.size(), false);
    for (std::size_t k = 0; k < r.states.size(); ++k) {
        if (seen[k]) continue;
        std::vector<std::size_t> orbit;
        for (const auto& sp : state_perms) orbit.push_back(sp[k]);
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        for (auto s : orbit) seen[s] = true;
        r.state_orbits.push_back(std::move(orbit));
    }
    return r;
}

/// Right reduction of the state matrix along conjugation orbits.
inline ReducedShift tqft_matrix(const RepShift& r) {
    return detail::reduce_by_orbits(r.presentation.matrix(), r.state_orbits, Side::right);
}

/// Orbit counts of periodic points under conjugation, with their recurrence.
inline OrbitCountReport flat_bundle_counts(const RepShift& r, std::size_t m) { return burnside_counts(r.edge_action, m); }

}  // namespace gsft
