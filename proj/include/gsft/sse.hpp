#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gsft/action.hpp"
#include "gsft/error.hpp"
#include "gsft/matrix.hpp"
#include "gsft/reduce.hpp"
#include "gsft/sft.hpp"

namespace gsft {

/// Elementary strong shift equivalence a ~ b certified by r s = a, s r = b.
struct ElementarySse {
    IntMatrix a;
    IntMatrix b;
    RectMatrix r;
    RectMatrix s;
};

/// Both products, exactly. Throws when the shapes cannot multiply.
inline bool verify_elementary_sse(const ElementarySse& e) {
    if (e.r.rows() != e.a.dim() || e.s.cols() != e.a.dim() || e.r.cols() != e.s.rows() || e.s.rows() != e.b.dim())
        throw InputError("certificate shapes do not match: a is " + std::to_string(e.a.dim()) + "x" +
                         std::to_string(e.a.dim()) + ", r is " + std::to_string(e.r.rows()) + "x" +
                         std::to_string(e.r.cols()) + ", s is " + std::to_string(e.s.rows()) + "x" +
                         std::to_string(e.s.cols()) + ", b is " + std::to_string(e.b.dim()) + "x" +
                         std::to_string(e.b.dim()));
    return mat_mul(e.r, e.s) == e.a && mat_mul(e.s, e.r) == e.b;
}

struct SseChain {
    std::vector<ElementarySse> steps;

    /// Every step verifies and consecutive endpoints agree.
    bool verify() const {
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (!verify_elementary_sse(steps[k])) return false;
            if (k > 0 && !(steps[k - 1].b == steps[k].a)) return false;
        }
        return true;
    }
};

/// The 2-block conjugacy X_a -> X_b of a 0-1 elementary SSE and its inverse.
/// An a-edge (i, j) goes to the unique b-state k with r(i,k) = s(k,j) = 1;
/// a b-edge (k, l) goes back to the unique a-state j with s(k,j) = r(j,l) = 1.
struct BlockConjugacy {
    ElementarySse certificate;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> forward;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> backward;

    /// a-state path i_0..i_n to the b-state path k_1..k_n.
    std::vector<std::size_t> apply_forward(const std::vector<std::size_t>& states) const {
        return apply(forward, states, "a");
    }

    /// b-state path k_0..k_n to the a-state path j_1..j_n.
    std::vector<std::size_t> apply_backward(const std::vector<std::size_t>& states) const {
        return apply(backward, states, "b");
    }

    /// Round trips lose one symbol at each end; on the inner window they
    /// must reproduce the input. Checked on every state path with 2..max_edges
    /// edges in both directions.
    bool check_mutually_inverse(std::size_t max_edges, std::size_t cap = default_cap) const {
        for (int dir = 0; dir < 2; ++dir) {
            const IntMatrix& m = dir == 0 ? certificate.a : certificate.b;
            std::size_t visited = 0;
            std::vector<std::size_t> path;
            bool ok = true;
            auto dfs = [&](auto&& self) -> void {
                if (!ok) return;
                if (path.size() >= 3) {
                    if (++visited > cap) throw CapExceeded("more than " + std::to_string(cap) + " paths to check");
                    auto there = dir == 0 ? apply_forward(path) : apply_backward(path);
                    auto back = dir == 0 ? apply_backward(there) : apply_forward(there);
                    if (!std::equal(back.begin(), back.end(), path.begin() + 1) || back.size() + 2 != path.size()) ok = false;
                }
                if (path.size() == max_edges + 1) return;
                for (std::size_t j = 0; j < m.dim(); ++j) {
                    if (m(path.back(), j) == 0) continue;
                    path.push_back(j);
                    self(self);
                    path.pop_back();
                }
            };
            for (std::size_t i = 0; i < m.dim() && ok; ++i) {
                path = {i};
                dfs(dfs);
            }
            if (!ok) return false;
        }
        return true;
    }

private:
    static std::vector<std::size_t> apply(const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& table,
                                          const std::vector<std::size_t>& states, const char* side) {
        std::vector<std::size_t> out;
        for (std::size_t t = 1; t < states.size(); ++t) {
            auto it = table.find({states[t - 1], states[t]});
            if (it == table.end())
                throw InputError(std::string("not a path of ") + side + ": no edge (" + std::to_string(states[t - 1] + 1) +
                                 "," + std::to_string(states[t] + 1) + ")");
            out.push_back(it->second);
        }
        return out;
    }
};

inline BlockConjugacy induced_conjugacy(const ElementarySse& e) {
    if (!e.r.is_zero_one() || !e.s.is_zero_one()) throw InputError("induced conjugacy needs 0-1 r and s");
    const std::size_t na = e.r.rows(), nb = e.r.cols();
    if (e.s.rows() != nb || e.s.cols() != na) throw InputError("certificate shapes do not match");
    BlockConjugacy c;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            std::optional<std::size_t> found;
            for (std::size_t k = 0; k < nb; ++k) {
                if (e.r(i, k) == 0 || e.s(k, j) == 0) continue;
                if (found)
                    throw PreconditionError("certificate is not of canonical 0-1 form: a-edge (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") factors through b-states " +
                                            std::to_string(*found + 1) + " and " + std::to_string(k + 1));
                found = k;
            }
            if (found) c.forward[{i, j}] = *found;
        }
    for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
            std::optional<std::size_t> found;
            for (std::size_t j = 0; j < na; ++j) {
                if (e.s(k, j) == 0 || e.r(j, l) == 0) continue;
                if (found)
                    throw PreconditionError("certificate is not of canonical 0-1 form: b-edge (" + std::to_string(k + 1) + "," +
                                            std::to_string(l + 1) + ") factors through a-states " +
                                            std::to_string(*found + 1) + " and " + std::to_string(j + 1));
                found = j;
            }
            if (found) c.backward[{k, l}] = *found;
        }
    if (!verify_elementary_sse(e)) throw PreconditionError("certificate does not verify: r s != a or s r != b");
    if (!e.a.is_zero_one() || !e.b.is_zero_one()) throw InputError("induced conjugacy needs 0-1 a and b");
    c.certificate = e;
    return c;
}

namespace detail {

inline void check_aligned_groups(const PermutationAction& phi, const PermutationAction& psi) {
    if (phi.group().order() != psi.group().order())
        throw InputError("actions have groups of different orders " + std::to_string(phi.group().order()) + " and " +
                         std::to_string(psi.group().order()));
    for (std::size_t a = 0; a < phi.group().order(); ++a)
        for (std::size_t b = 0; b < phi.group().order(); ++b)
            if (phi.group().multiply(a, b) != psi.group().multiply(a, b))
                throw InputError("group elements of the two actions are not aligned (multiplication tables differ)");
}

}  // namespace detail

/// Pushes an equivariant certificate a ~ b down to the right reduced
/// matrices: (U_phi r V_psi, U_psi s V_phi) certifies A_phi ~ B_psi. The two
/// actions must index the same abstract group elements identically.
inline ElementarySse transport_to_reduced(const ElementarySse& e, const PermutationAction& phi, const PermutationAction& psi) {
    if (!(phi.matrix() == e.a) || !(psi.matrix() == e.b))
        throw InputError("actions do not act on the certificate's endpoint matrices");
    if (!verify_elementary_sse(e)) throw PreconditionError("certificate does not verify");
    detail::check_aligned_groups(phi, psi);
    for (std::size_t g = 0; g < phi.group().order(); ++g) {
        auto pa = permutation_matrix(phi.group().element(g));
        auto pb = permutation_matrix(psi.group().element(g));
        if (!(mat_mul(e.r, pb) == mat_mul(pa, e.r)))
            throw PreconditionError("r does not intertwine the actions at g = " + to_cycle_string(phi.group().element(g)));
        if (!(mat_mul(e.s, pa) == mat_mul(pb, e.s)))
            throw PreconditionError("s does not intertwine the actions at g = " + to_cycle_string(phi.group().element(g)));
    }
    auto ra = right_reduce(phi), rb = right_reduce(psi);
    ElementarySse out{ra.matrix, rb.matrix, mat_mul(mat_mul(ra.selector_u, e.r), rb.selector_v),
                      mat_mul(mat_mul(rb.selector_u, e.s), ra.selector_v)};
    if (!verify_elementary_sse(out)) throw PreconditionError("transported certificate does not verify");
    return out;
}

enum class SplitDirection { out, in };

/// For each state, an ordered partition of its out-neighbors (out-split) or
/// in-neighbors (in-split). In a 0-1 presentation a neighbor names an edge.
struct SplitData {
    SplitDirection direction = SplitDirection::out;
    std::vector<std::vector<std::vector<std::size_t>>> blocks;

    /// One block per state holding every neighbor.
    static SplitData trivial(const IntMatrix& a, SplitDirection dir) {
        SplitData d{dir, {}};
        for (std::size_t i = 0; i < a.dim(); ++i) {
            std::vector<std::size_t> block;
            for (std::size_t j = 0; j < a.dim(); ++j)
                if ((dir == SplitDirection::out ? a(i, j) : a(j, i)) != 0) block.push_back(j);
            d.blocks.push_back({block});
        }
        return d;
    }

    /// Every neighbor in its own block.
    static SplitData finest(const IntMatrix& a, SplitDirection dir) {
        SplitData d{dir, {}};
        for (std::size_t i = 0; i < a.dim(); ++i) {
            d.blocks.emplace_back();
            for (std::size_t j = 0; j < a.dim(); ++j)
                if ((dir == SplitDirection::out ? a(i, j) : a(j, i)) != 0) d.blocks.back().push_back({j});
        }
        return d;
    }
};

struct SplitResult {
    PermutationAction action;
    /// Certificate from the original matrix to the split matrix.
    ElementarySse certificate;
    /// (original state, block index within that state's partition) per new state.
    std::vector<std::pair<std::size_t, std::size_t>> split_states;
};

namespace detail {

inline std::vector<std::vector<std::vector<std::size_t>>> normalized_blocks(const PermutationAction& a, const SplitData& d) {
    const auto& m = a.matrix();
    const bool out = d.direction == SplitDirection::out;
    if (d.blocks.size() != m.dim())
        throw InputError("split data has " + std::to_string(d.blocks.size()) + " partitions for " +
                         std::to_string(m.dim()) + " states");
    auto blocks = d.blocks;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        std::vector<std::size_t> covered;
        for (auto& block : blocks[i]) {
            if (block.empty()) throw InputError("empty block at state " + std::to_string(i + 1));
            std::sort(block.begin(), block.end());
            covered.insert(covered.end(), block.begin(), block.end());
        }
        std::sort(covered.begin(), covered.end());
        std::vector<std::size_t> neighbors;
        for (std::size_t j = 0; j < m.dim(); ++j)
            if ((out ? m(i, j) : m(j, i)) != 0) neighbors.push_back(j);
        if (covered != neighbors)
            throw InputError(std::string("blocks at state ") + std::to_string(i + 1) + " do not partition its " +
                             (out ? "out" : "in") + "-neighbors");
        std::sort(blocks[i].begin(), blocks[i].end());
    }
    return blocks;
}

inline std::size_t block_index(const std::vector<std::vector<std::size_t>>& partition, std::vector<std::size_t> block) {
    std::sort(block.begin(), block.end());
    auto it = std::find(partition.begin(), partition.end(), block);
    return it == partition.end() ? partition.size() : static_cast<std::size_t>(it - partition.begin());
}

}  // namespace detail

/// State splitting carrying the action along. Split states are ordered by
/// their least edge triple: (i, least target) for out-splits, (least source,
/// j) for in-splits. The certificate is (division, amalgamation) for
/// out-splits and (amalgamation, division) for in-splits, oriented so that it
/// certifies original ~ split.
inline SplitResult split_states(const PermutationAction& a, const SplitData& d) {
    const bool out = d.direction == SplitDirection::out;
    const auto& m = a.matrix();
    const std::size_t n = m.dim();
    auto blocks = detail::normalized_blocks(a, d);
    const auto& group = a.group();

    // compatibility: g carries the partition at i blockwise onto the one at gi
    for (std::size_t g = 0; g < group.order(); ++g)
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& block : blocks[i]) {
                std::vector<std::size_t> image;
                for (auto j : block) image.push_back(a.act(g, j));
                if (detail::block_index(blocks[a.act(g, i)], image) == blocks[a.act(g, i)].size())
                    throw PreconditionError("split is not compatible with the action: g = " +
                                            to_cycle_string(group.element(g)) + " does not carry a block at state " +
                                            std::to_string(i + 1) + " onto a block at state " +
                                            std::to_string(a.act(g, i) + 1));
            }

    struct Key {
        std::size_t first, second, state, block;
    };
    std::vector<Key> keys;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < blocks[i].size(); ++p) {
            std::size_t least = blocks[i][p].front();
            keys.push_back(out ? Key{i, least, i, p} : Key{least, i, i, p});
        }
    std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });
    const std::size_t ns = keys.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> new_index;
    SplitResult result;
    for (std::size_t k = 0; k < ns; ++k) {
        new_index[{keys[k].state, keys[k].block}] = k;
        result.split_states.push_back({keys[k].state, keys[k].block});
    }

    // D: original x split, D(i, (i,p)) = 1.  E: split x original, E((i,p), j) = 1 iff j in block p at i.
    RectMatrix div(n, ns), amal_out(ns, n), amal_in(n, ns), div_in(ns, n);
    for (std::size_t k = 0; k < ns; ++k) {
        auto [i, p] = result.split_states[k];
        if (out) {
            div.set(i, k, 1);
            for (auto j : blocks[i][p]) amal_out.set(k, j, 1);
        } else {
            div_in.set(k, i, 1);
            for (auto j : blocks[i][p]) amal_in.set(j, k, 1);
        }
    }
    RectMatrix r = out ? div : amal_in;
    RectMatrix s = out ? amal_out : div_in;
    IntMatrix split(mat_mul(s, r));
    std::vector<std::string> labels;
    for (auto [i, p] : result.split_states) labels.push_back(m.label(i) + "_" + std::to_string(p + 1));
    split.set_labels(std::move(labels));

    std::vector<Permutation> perms;
    for (std::size_t g = 0; g < group.order(); ++g) {
        Permutation perm(ns);
        for (std::size_t k = 0; k < ns; ++k) {
            auto [i, p] = result.split_states[k];
            std::size_t gi = a.act(g, i);
            std::vector<std::size_t> image;
            for (auto j : blocks[i][p]) image.push_back(a.act(g, j));
            perm[k] = static_cast<std::uint32_t>(new_index.at({gi, detail::block_index(blocks[gi], image)}));
        }
        perms.push_back(std::move(perm));
    }
    auto moved = PermGroup::aligned_with(group, ns, std::move(perms));
    result.action = validate_action(SftPresentation(split), std::move(moved));
    result.certificate = ElementarySse{m, split, std::move(r), std::move(s)};
    if (!verify_elementary_sse(result.certificate)) throw PreconditionError("split certificate does not verify");
    return result;
}

inline SplitResult out_split(const PermutationAction& a, SplitData d) {
    d.direction = SplitDirection::out;
    return split_states(a, d);
}

inline SplitResult in_split(const PermutationAction& a, SplitData d) {
    d.direction = SplitDirection::in;
    return split_states(a, d);
}

struct Recoding {
    std::vector<SplitResult> steps;

    const PermutationAction& result() const { return steps.back().action; }

    SseChain chain() const {
        SseChain c;
        for (const auto& s : steps) c.steps.push_back(s.certificate);
        return c;
    }
};

/// The n-block presentation reached by n-1 finest out-splits; state order
/// matches higher_block.
inline Recoding higher_block_recoding(const PermutationAction& a, std::size_t n) {
    if (n < 2) throw InputError("higher block recoding needs n >= 2");
    Recoding rec;
    const PermutationAction* cur = &a;
    for (std::size_t k = 1; k < n; ++k) {
        rec.steps.push_back(out_split(*cur, SplitData::finest(cur->matrix(), SplitDirection::out)));
        cur = &rec.steps.back().action;
    }
    return rec;
}

/// Commuting square over an equivariant right-resolving one-block factor
/// map eta: theta2 o eta = eta_bar o theta1, all four right-resolving.
struct ActionFactorSquare {
    OneBlockCode eta;
    OneBlockCode eta_bar;
    OneBlockCode theta1;
    OneBlockCode theta2;
};

namespace detail {

inline std::string edge_text(const Edge& e) { return "(" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")"; }

/// Edge map from a 0-1 action shift to its right reduced shift built from a
/// per-state numbering: number(i, e) is the copy index assigned to edge e.
template <class Numbering>
OneBlockCode code_to_reduced(const PermutationAction& a, const SftPresentation& reduced, const OrbitStructure& orbits,
                             Numbering number) {
    std::vector<Edge> edges = a.presentation().edges(), images;
    for (const auto& e : edges)
        images.push_back({static_cast<std::uint32_t>(orbits.orbit_of[e.from]), static_cast<std::uint32_t>(orbits.orbit_of[e.to]),
                          number(e)});
    return OneBlockCode(a.presentation(), reduced, std::move(edges), std::move(images));
}

/// Copy index of e among the edges from e.from into the orbit of e.to, ordered by target.
inline std::uint32_t canonical_copy(const IntMatrix& m, const OrbitStructure& orbits, const Edge& e) {
    std::uint32_t c = 0;
    for (auto k : orbits.orbits[orbits.orbit_of[e.to]])
        if (k < e.to && m(e.from, k) != 0) ++c;
    return c;
}

/// Tries to complete the square for a fixed theta2. Returns nullopt with a
/// message when no theta1 makes it commute.
inline std::optional<ActionFactorSquare> complete_square(const OneBlockCode& eta, const PermutationAction& phi,
                                                         const PermutationAction& psi, const OneBlockCode& theta2,
                                                         std::string& why) {
    auto orb_a = orbit_structure(phi);
    SftPresentation red_a(right_reduce(phi).matrix), red_b(right_reduce(psi).matrix);
    const auto& ma = phi.matrix();

    // eta_bar on X_phi edges (Gi, Gj, c): theta2(eta(e_c)), e_c the canonical c-th edge from the representative.
    std::vector<Edge> bar_keys = red_a.edges(), bar_images(bar_keys.size());
    for (const auto& e : phi.presentation().edges()) {
        if (e.from != orb_a.representative(orb_a.orbit_of[e.from])) continue;
        Edge key{static_cast<std::uint32_t>(orb_a.orbit_of[e.from]), static_cast<std::uint32_t>(orb_a.orbit_of[e.to]),
                 canonical_copy(ma, orb_a, e)};
        auto pos = std::lower_bound(bar_keys.begin(), bar_keys.end(), key) - bar_keys.begin();
        bar_images[static_cast<std::size_t>(pos)] = theta2(eta(e));
    }
    OneBlockCode eta_bar(red_a, red_b, bar_keys, bar_images);

    // theta1 solved row by row from eta_bar(theta1(e)) = theta2(eta(e)).
    std::map<std::pair<std::uint32_t, Edge>, Edge> bar_inverse;
    for (std::size_t k = 0; k < bar_keys.size(); ++k)
        if (!bar_inverse.emplace(std::make_pair(bar_keys[k].from, bar_images[k]), bar_keys[k]).second) {
            why = "eta_bar is not right-resolving";
            return std::nullopt;
        }
    std::vector<Edge> t1_keys = phi.presentation().edges(), t1_images;
    for (const auto& e : t1_keys) {
        auto oi = static_cast<std::uint32_t>(orb_a.orbit_of[e.from]);
        auto it = bar_inverse.find({oi, theta2(eta(e))});
        if (it == bar_inverse.end() || it->second.to != orb_a.orbit_of[e.to]) {
            why = "no theta1 edge for " + edge_text(e);
            return std::nullopt;
        }
        t1_images.push_back(it->second);
    }
    OneBlockCode theta1(phi.presentation(), red_a, t1_keys, t1_images);
    return ActionFactorSquare{eta, eta_bar, theta1, theta2};
}

}  // namespace detail

/// Builds and verifies the square for an equivariant right-resolving
/// one-block factor map between 0-1 actions with aligned groups.
inline ActionFactorSquare factor_square(const OneBlockCode& eta, const PermutationAction& phi, const PermutationAction& psi) {
    if (!(eta.source().matrix() == phi.matrix()) || !(eta.target().matrix() == psi.matrix()))
        throw InputError("factor map does not connect the two actions' presentations");
    detail::check_aligned_groups(phi, psi);
    if (!eta.respects_adjacency()) throw PreconditionError("map is not a graph homomorphism");
    if (!eta.is_onto_edges()) throw PreconditionError("map is not onto the target edge alphabet");
    if (auto w = eta.right_resolving_witness())
        throw PreconditionError("map is not right-resolving: 2-blocks " + detail::edge_text(w->first) + " and " +
                                detail::edge_text(w->second) + " both map to " + detail::edge_text(eta(w->first)));
    for (std::size_t g = 0; g < phi.group().order(); ++g)
        for (const auto& e : eta.source_edges())
            if (eta(phi.act(g, e)) != psi.act(g, eta(e)))
                throw PreconditionError("map does not intertwine the actions at g = " + to_cycle_string(phi.group().element(g)) +
                                        ", edge " + detail::edge_text(e));

    auto orb_b = orbit_structure(psi);
    SftPresentation red_b(right_reduce(psi).matrix);
    const auto& mb = psi.matrix();
    std::vector<OneBlockCode> candidates;
    candidates.push_back(build_eta(psi));
    // equivariant numbering: a row h b (b a representative, h the first
    // element taking b there) numbers its edges as row b numbers h^-1 of them
    candidates.push_back(detail::code_to_reduced(psi, red_b, orb_b, [&](const Edge& e) {
        std::size_t rep = orb_b.representative(orb_b.orbit_of[e.from]);
        std::size_t h = 0;
        while (psi.act(h, rep) != e.from) ++h;
        std::size_t hinv = psi.group().inverse_of(h);
        return detail::canonical_copy(mb, orb_b, psi.act(hinv, e));
    }));

    std::string why;
    for (const auto& theta2 : candidates) {
        auto square = detail::complete_square(eta, phi, psi, theta2, why);
        if (!square) continue;
        for (const auto* code : {&square->eta_bar, &square->theta1, &square->theta2}) {
            if (!code->is_right_resolving()) throw PreconditionError("constructed map is not right-resolving");
            if (!code->respects_adjacency()) throw PreconditionError("constructed map is not a graph homomorphism");
        }
        if (!(square->eta.then(square->theta2) == square->theta1.then(square->eta_bar)))
            throw PreconditionError("square does not commute");
        return *square;
    }
    throw PreconditionError("no commuting square found: " + why);
}

/// Square for the one-block map induced by a state map.
inline ActionFactorSquare factor_square(const std::vector<std::size_t>& state_map, const PermutationAction& phi,
                                        const PermutationAction& psi) {
    return factor_square(OneBlockCode::from_state_map(phi.presentation(), psi.presentation(), state_map), phi, psi);
}

}  // namespace gsft
