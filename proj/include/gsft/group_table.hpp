#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "gsft/error.hpp"
#include "gsft/perm_group.hpp"

namespace gsft {

/// Abstract finite group given by its multiplication table; the identity is
/// element 0.
class FiniteGroupTable {
public:
    /// Largest order for which associativity is checked on every triple.
    static constexpr std::size_t associativity_bound = 128;

    FiniteGroupTable() : FiniteGroupTable({"e"}, {{0}}) {}

    FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
        : names_(std::move(names)), table_(std::move(table)) {
        const std::size_t n = names_.size();
        if (n == 0) throw InputError("group table is empty");
        if (table_.size() != n) throw InputError("group table has " + std::to_string(table_.size()) + " rows for " + std::to_string(n) + " elements");
        for (const auto& row : table_) {
            if (row.size() != n) throw InputError("group table row has the wrong length");
            for (auto v : row)
                if (v >= n) throw InputError("group table entry out of range");
        }
        std::map<std::string, std::size_t> seen;
        for (std::size_t k = 0; k < n; ++k)
            if (!seen.emplace(names_[k], k).second) throw InputError("duplicate element name '" + names_[k] + "'");
        for (std::size_t a = 0; a < n; ++a)
            if (table_[0][a] != a || table_[a][0] != a) throw InputError("element 0 of a group table must be the identity");
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                if (table_[a][b] == 0 && table_[b][a] == 0) inverse_[a] = b;
            if (inverse_[a] == n) throw InputError("element '" + names_[a] + "' has no inverse");
        }
        if (n <= associativity_bound) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c)
                        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                            throw InputError("group table is not associative at (" + names_[a] + ", " + names_[b] + ", " +
                                             names_[c] + ")");
        }
    }

    static FiniteGroupTable from_perm_group(const PermGroup& g) {
        std::vector<std::string> names;
        std::vector<std::vector<std::size_t>> table(g.order(), std::vector<std::size_t>(g.order()));
        for (std::size_t a = 0; a < g.order(); ++a) {
            names.push_back(to_cycle_string(g.element(a)));
            for (std::size_t b = 0; b < g.order(); ++b) table[a][b] = g.multiply(a, b);
        }
        return FiniteGroupTable(std::move(names), std::move(table));
    }

    /// Cyclic Zn, symmetric Sn, dihedral Dn (order 2n), or quaternion Q8.
    static FiniteGroupTable builtin(const std::string& name, std::size_t limit = 5040) {
        static const std::regex pattern("^([ZSD])([0-9]+)$");
        std::smatch m;
        if (name == "Q8") return quaternion();
        if (!std::regex_match(name, m, pattern)) throw InputError("unknown builtin group '" + name + "' (use Zn, Sn, Dn, Q8)");
        std::size_t n = std::stoul(m[2]);
        if (n == 0) throw InputError("builtin group '" + name + "' needs n >= 1");
        const char kind = m[1].str()[0];
        if (kind == 'Z') {
            if (n > limit) throw CapExceeded("group order exceeds limit " + std::to_string(limit));
            std::vector<std::string> names;
            std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
            for (std::size_t a = 0; a < n; ++a) {
                names.push_back(std::to_string(a));
                for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
            }
            return FiniteGroupTable(std::move(names), std::move(table));
        }
        if (kind == 'S') {
            std::vector<Permutation> gens;
            if (n >= 2) {
                Permutation cycle(n), swap = identity_permutation(n);
                for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
                std::swap(swap[0], swap[1]);
                gens = {swap, cycle};
            }
            return from_perm_group(PermGroup::from_generators(n, gens, limit));
        }
        // dihedral r^k s^e with s r = r^-1 s
        if (2 * n > limit) throw CapExceeded("group order exceeds limit " + std::to_string(limit));
        std::vector<std::string> names;
        std::vector<std::vector<std::size_t>> table(2 * n, std::vector<std::size_t>(2 * n));
        auto index = [n](std::size_t k, std::size_t e) { return e * n + k; };
        for (std::size_t e = 0; e < 2; ++e)
            for (std::size_t k = 0; k < n; ++k) {
                std::string r = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
                names.push_back(e == 0 ? (k == 0 ? "e" : r) : (r.empty() ? "s" : r + "s"));
            }
        for (std::size_t e1 = 0; e1 < 2; ++e1)
            for (std::size_t k1 = 0; k1 < n; ++k1)
                for (std::size_t e2 = 0; e2 < 2; ++e2)
                    for (std::size_t k2 = 0; k2 < n; ++k2) {
                        std::size_t k = e1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
                        table[index(k1, e1)][index(k2, e2)] = index(k, e1 ^ e2);
                    }
        return FiniteGroupTable(std::move(names), std::move(table));
    }

    std::size_t order() const { return names_.size(); }
    std::size_t identity() const { return 0; }
    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::string& name(std::size_t a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t k = 0; k < names_.size(); ++k)
            if (names_[k] == name) return k;
        throw InputError("no group element named '" + name + "'");
    }

    /// c^-1 x c
    std::size_t conjugate(std::size_t x, std::size_t c) const { return multiply(multiply(inverse(c), x), c); }

    std::vector<std::size_t> center() const {
        std::vector<std::size_t> z;
        for (std::size_t a = 0; a < order(); ++a) {
            bool central = true;
            for (std::size_t b = 0; b < order() && central; ++b) central = multiply(a, b) == multiply(b, a);
            if (central) z.push_back(a);
        }
        return z;
    }

private:
    static FiniteGroupTable quaternion() {
        // units +-1, +-i, +-j, +-k; unit u in {1,i,j,k} with sign bit
        const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
        // product of basis units: (unit, sign)
        const int prod[4][4][2] = {{{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                   {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
                                   {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
                                   {{3, 0}, {2, 0}, {1, 1}, {0, 1}}};
        std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t b = 0; b < 8; ++b) {
                std::size_t ua = a / 2, ub = b / 2;
                std::size_t sign = (a % 2) ^ (b % 2) ^ static_cast<std::size_t>(prod[ua][ub][1]);
                table[a][b] = static_cast<std::size_t>(prod[ua][ub][0]) * 2 + sign;
            }
        return FiniteGroupTable(names, std::move(table));
    }

    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
};

/// Word in abstract generators: (generator index, +1 or -1) letters.
struct GroupWord {
    struct Letter {
        std::size_t generator = 0;
        int sign = 1;
        friend bool operator==(const Letter&, const Letter&) = default;
    };
    std::vector<Letter> letters;

    /// Letters a..z are generators 0..25; uppercase is the inverse. "1" or
    /// "" is the empty word. Spaces are ignored.
    static GroupWord parse(const std::string& text) {
        GroupWord w;
        if (text == "1") return w;
        for (char ch : text) {
            if (ch == ' ') continue;
            if (std::islower(static_cast<unsigned char>(ch)))
                w.letters.push_back({static_cast<std::size_t>(ch - 'a'), 1});
            else if (std::isupper(static_cast<unsigned char>(ch)))
                w.letters.push_back({static_cast<std::size_t>(ch - 'A'), -1});
            else
                throw InputError("bad letter '" + std::string(1, ch) + "' in word '" + text + "'");
        }
        return w;
    }

    std::string to_string() const {
        if (letters.empty()) return "1";
        std::string s;
        for (const auto& l : letters) s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + static_cast<char>(l.generator));
        return s;
    }

    std::size_t max_generator() const {
        std::size_t m = 0;
        for (const auto& l : letters) m = std::max(m, l.generator + 1);
        return m;
    }

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

/// Product of the generator images along the word, left to right.
inline std::size_t evaluate_word(const GroupWord& w, const std::vector<std::size_t>& images, const FiniteGroupTable& g) {
    std::size_t acc = g.identity();
    for (const auto& l : w.letters) {
        if (l.generator >= images.size())
            throw InputError("word '" + w.to_string() + "' uses generator " + std::to_string(l.generator + 1) + " of " +
                             std::to_string(images.size()));
        if (images[l.generator] >= g.order()) throw InputError("generator image out of range");
        acc = g.multiply(acc, l.sign > 0 ? images[l.generator] : g.inverse(images[l.generator]));
    }
    return acc;
}

/// All image tuples satisfying the relators, in lexicographic order of
/// element indices. Each relator is tested as soon as its generators are set.
inline std::vector<std::vector<std::size_t>> enumerate_homs(std::size_t gens, const std::vector<GroupWord>& relators,
                                                            const FiniteGroupTable& g, std::size_t limit = default_cap) {
    double size = 1;
    for (std::size_t k = 0; k < gens; ++k) {
        size *= static_cast<double>(g.order());
        if (size > static_cast<double>(limit))
            throw CapExceeded("|G|^" + std::to_string(gens) + " exceeds limit " + std::to_string(limit));
    }
    std::vector<std::vector<const GroupWord*>> ready(gens + 1);
    for (const auto& r : relators) {
        if (r.max_generator() > gens) throw InputError("relator '" + r.to_string() + "' uses an undeclared generator");
        ready[r.max_generator()].push_back(&r);
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> images;
    auto holds = [&](std::size_t assigned) {
        for (const auto* r : ready[assigned])
            if (evaluate_word(*r, images, g) != g.identity()) return false;
        return true;
    };
    if (!holds(0)) return out;
    auto extend = [&](auto&& self) -> void {
        if (images.size() == gens) {
            out.push_back(images);
            return;
        }
        for (std::size_t x = 0; x < g.order(); ++x) {
            images.push_back(x);
            if (holds(images.size())) self(self);
            images.pop_back();
        }
    };
    extend(extend);
    return out;
}

}  // namespace gsft
