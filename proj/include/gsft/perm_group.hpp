#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gsft/error.hpp"

namespace gsft {

/// Bijection of {0, ..., n-1}; perm[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

/// (p * q)(i) = p(q(i)): apply q first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

inline Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
    return r;
}

inline bool is_bijection(const Permutation& p, std::size_t degree) {
    if (p.size() != degree) return false;
    std::vector<bool> hit(degree, false);
    for (auto v : p) {
        if (v >= degree || hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

/// Parses 1-based cycle notation: "(1 2)(3 4 5 6)", "(1,2)", or the compact
/// "(12)(3456)" when the degree is below 10. "()" is the identity.
inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
    Permutation p = identity_permutation(degree);
    std::vector<bool> used(degree, false);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) { throw InputError("bad cycle notation '" + text + "': " + why); };
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        if (text[pos] != '(') fail("expected '('");
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos) fail("unbalanced parenthesis");
        std::string body = text.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        std::vector<std::size_t> cycle;
        bool separated = body.find_first_of(" ,\t") != std::string::npos;
        if (!separated && degree >= 10 && body.size() > 1) fail("use separators between points when degree >= 10");
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            for (char ch : token)
                if (!std::isdigit(static_cast<unsigned char>(ch))) fail("non-numeric point '" + token + "'");
            std::size_t v = std::stoul(token);
            if (v < 1 || v > degree) fail("point " + token + " outside 1.." + std::to_string(degree));
            cycle.push_back(v - 1);
            token.clear();
        };
        for (char ch : body) {
            if (ch == ' ' || ch == ',' || ch == '\t') {
                flush();
            } else if (!separated) {
                token = std::string(1, ch);
                flush();
            } else {
                token += ch;
            }
        }
        flush();
        for (std::size_t v : cycle) {
            if (used[v]) fail("point " + std::to_string(v + 1) + " repeated");
            used[v] = true;
        }
        for (std::size_t k = 0; k < cycle.size(); ++k)
            p[cycle[k]] = static_cast<std::uint32_t>(cycle[(k + 1) % cycle.size()]);
    }
    return p;
}

/// 1-based cycle notation with separators, fixed points omitted; "()" for the identity.
inline std::string to_cycle_string(const Permutation& p) {
    std::string s;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        s += "(";
        std::size_t j = i;
        bool first = true;
        do {
            seen[j] = true;
            s += (first ? "" : " ") + std::to_string(j + 1);
            first = false;
            j = p[j];
        } while (j != i);
        s += ")";
    }
    return s.empty() ? "()" : s;
}

/// Finite group of permutations of {0..degree-1}, elements indexed with the
/// identity at index 0, plus multiplication and inverse tables.
class PermGroup {
public:
    PermGroup() = default;

    static PermGroup trivial(std::size_t degree) { return from_generators(degree, {}, 1); }

    /// Closure of the generators. Elements are listed breadth-first by word
    /// length over the generators, sorted lexicographically within a layer.
    static PermGroup from_generators(std::size_t degree, const std::vector<Permutation>& gens, std::size_t limit) {
        for (const auto& g : gens)
            if (!is_bijection(g, degree)) throw InputError("generator is not a bijection of degree " + std::to_string(degree));
        PermGroup group;
        group.degree_ = degree;
        group.generators_ = gens;
        std::map<Permutation, std::size_t> index;
        std::vector<Permutation> layer{identity_permutation(degree)};
        index[layer.front()] = 0;
        group.elements_.push_back(layer.front());
        group.words_.push_back({});
        while (!layer.empty()) {
            std::map<Permutation, std::vector<std::size_t>> next;
            for (const auto& h : layer) {
                const auto& hword = group.words_[index[h]];
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    Permutation p = compose(gens[k], h);
                    if (index.count(p) || next.count(p)) continue;
                    auto w = hword;
                    w.push_back(k);
                    next.emplace(std::move(p), std::move(w));
                }
            }
            layer.clear();
            for (auto& [p, w] : next) {
                if (group.elements_.size() >= limit)
                    throw CapExceeded("group order exceeds limit " + std::to_string(limit));
                index[p] = group.elements_.size();
                group.elements_.push_back(p);
                group.words_.push_back(std::move(w));
                layer.push_back(p);
            }
        }
        group.build_tables(index);
        return group;
    }

    /// Builds the group from explicit, pairwise distinct permutations that
    /// are the images of `reference`'s elements under a homomorphism (same
    /// indexing, same multiplication table). Used to transport an action.
    static PermGroup aligned_with(const PermGroup& reference, std::size_t degree, std::vector<Permutation> perms) {
        if (perms.size() != reference.order()) throw InputError("aligned group has the wrong number of elements");
        PermGroup group;
        group.degree_ = degree;
        group.elements_ = std::move(perms);
        group.words_ = reference.words_;
        std::map<Permutation, std::size_t> index;
        for (std::size_t k = 0; k < group.elements_.size(); ++k) {
            if (!is_bijection(group.elements_[k], degree)) throw InputError("aligned element is not a bijection");
            if (!index.emplace(group.elements_[k], k).second)
                throw PreconditionError("transported action is not faithful (elements " +
                                        std::to_string(index[group.elements_[k]]) + " and " + std::to_string(k) + " coincide)");
        }
        group.mult_ = reference.mult_;
        group.inv_ = reference.inv_;
        for (std::size_t a = 0; a < group.order(); ++a)
            for (std::size_t b = 0; b < group.order(); ++b)
                if (compose(group.elements_[a], group.elements_[b]) != group.elements_[group.mult_[a][b]])
                    throw PreconditionError("transported permutations do not respect the group law");
        for (std::size_t k : reference.generator_indices()) group.generators_.push_back(group.elements_[k]);
        return group;
    }

    std::size_t degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const Permutation& element(std::size_t k) const { return elements_[k]; }
    const std::vector<Permutation>& generators() const { return generators_; }
    /// Word in the generators (applied left to right) producing element k.
    const std::vector<std::size_t>& word(std::size_t k) const { return words_[k]; }
    std::size_t multiply(std::size_t a, std::size_t b) const { return mult_[a][b]; }
    std::size_t inverse_of(std::size_t a) const { return inv_[a]; }

    std::size_t index_of(const Permutation& p) const {
        auto it = std::find(elements_.begin(), elements_.end(), p);
        if (it == elements_.end()) throw InputError("permutation " + to_cycle_string(p) + " is not in the group");
        return static_cast<std::size_t>(it - elements_.begin());
    }

    std::size_t element_order(std::size_t k) const {
        std::size_t ord = 1, cur = k;
        while (cur != 0) {
            cur = mult_[cur][k];
            ++ord;
        }
        return ord;
    }

    /// Least common multiple of the element orders.
    std::size_t exponent() const {
        std::size_t e = 1;
        for (std::size_t k = 0; k < order(); ++k) e = std::lcm(e, element_order(k));
        return e;
    }

    /// Element index of each generator.
    std::vector<std::size_t> generator_indices() const {
        std::vector<std::size_t> out;
        for (const auto& g : generators_) out.push_back(index_of(g));
        return out;
    }

private:
    void build_tables(const std::map<Permutation, std::size_t>& index) {
        const std::size_t n = elements_.size();
        mult_.assign(n, std::vector<std::size_t>(n));
        inv_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) mult_[a][b] = index.at(compose(elements_[a], elements_[b]));
            inv_[a] = index.at(gsft::inverse(elements_[a]));
        }
    }

    std::size_t degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<Permutation> generators_;
    std::vector<std::vector<std::size_t>> words_;
    std::vector<std::vector<std::size_t>> mult_;
    std::vector<std::size_t> inv_;
};

/// Images of `group`'s elements under the homomorphism sending its k-th
/// generator to images[k]. Fails if the assignment is not a homomorphism.
inline std::vector<Permutation> homomorphic_images(const PermGroup& group, const std::vector<Permutation>& images,
                                                   std::size_t degree) {
    if (images.size() != group.generators().size())
        throw InputError("need " + std::to_string(group.generators().size()) + " generator images, got " +
                         std::to_string(images.size()));
    for (const auto& p : images)
        if (!is_bijection(p, degree)) throw InputError("generator image is not a bijection");
    std::vector<Permutation> out;
    for (std::size_t k = 0; k < group.order(); ++k) {
        Permutation p = identity_permutation(degree);
        for (std::size_t letter : group.word(k)) p = compose(images[letter], p);
        out.push_back(std::move(p));
    }
    for (std::size_t a = 0; a < group.order(); ++a)
        for (std::size_t b = 0; b < group.order(); ++b)
            if (compose(out[a], out[b]) != out[group.multiply(a, b)])
                throw PreconditionError("generator images do not define a homomorphism");
    return out;
}

}  // namespace gsft
