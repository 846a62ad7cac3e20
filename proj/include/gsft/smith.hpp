#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gsft/bigint.hpp"
#include "gsft/matrix.hpp"

namespace gsft {

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k with
/// d_i >= 2 and d_i | d_{i+1}.
struct AbelianGroupInvariants {
    std::vector<BigInt> torsion;
    std::size_t free_rank = 0;

    friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;

    bool is_valid() const {
        for (std::size_t k = 0; k < torsion.size(); ++k) {
            if (torsion[k] < 2) return false;
            if (k + 1 < torsion.size() && torsion[k + 1] % torsion[k] != 0) return false;
        }
        return true;
    }

    /// "Z/2 + Z/2", "Z^2 + Z/3", "0".
    std::string to_string() const {
        std::string s;
        auto append = [&](const std::string& part) { s += (s.empty() ? "" : " + ") + part; };
        if (free_rank == 1) append("Z");
        if (free_rank > 1) append("Z^" + std::to_string(free_rank));
        for (const auto& d : torsion) append("Z/" + d.str());
        return s.empty() ? "0" : s;
    }
};

/// Invariant factors of the cokernel of m (Z^rows / m Z^cols), by integer
/// row and column reduction pivoting on the entry of least absolute value.
inline AbelianGroupInvariants smith_normal_form(const RectMatrix& input) {
    const std::size_t rows = input.rows(), cols = input.cols();
    std::vector<std::vector<BigInt>> m = input.to_rows();
    std::vector<BigInt> diagonal;

    std::size_t top = 0;
    while (top < rows && top < cols) {
        // pivot: least nonzero |entry| in the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = top; r < rows; ++r)
            for (std::size_t c = top; c < cols; ++c)
                if (m[r][c] != 0 && (pr == rows || abs(m[r][c]) < abs(m[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(m[top], m[pr]);
        for (auto& row : m) std::swap(row[top], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            const BigInt pivot = m[top][top];
            for (std::size_t r = top + 1; r < rows; ++r) {
                if (m[r][top] == 0) continue;
                BigInt q = m[r][top] / pivot;
                for (std::size_t c = top; c < cols; ++c) m[r][c] -= q * m[top][c];
                if (m[r][top] != 0) clean = false;
            }
            for (std::size_t c = top + 1; c < cols; ++c) {
                if (m[top][c] == 0) continue;
                BigInt q = m[top][c] / pivot;
                for (std::size_t r = top; r < rows; ++r) m[r][c] -= q * m[r][top];
                if (m[top][c] != 0) clean = false;
            }
            if (!clean) {
                // a remainder is smaller than the pivot; move it into place
                std::size_t br = top, bc = top;
                for (std::size_t r = top; r < rows; ++r)
                    if (m[r][top] != 0 && abs(m[r][top]) < abs(m[br][bc])) br = r, bc = top;
                for (std::size_t c = top; c < cols; ++c)
                    if (m[top][c] != 0 && abs(m[top][c]) < abs(m[br][bc])) br = top, bc = c;
                std::swap(m[top], m[br]);
                for (auto& row : m) std::swap(row[top], row[bc]);
                continue;
            }
            // the pivot must divide the whole remaining block
            for (std::size_t r = top + 1; r < rows && clean; ++r)
                for (std::size_t c = top + 1; c < cols; ++c)
                    if (m[r][c] % pivot != 0) {
                        for (std::size_t k = top; k < cols; ++k) m[top][k] += m[r][k];
                        clean = false;
                        break;
                    }
        }
        diagonal.push_back(abs(m[top][top]));
        ++top;
    }

    AbelianGroupInvariants out;
    out.free_rank = rows - diagonal.size();
    for (const auto& d : diagonal)
        if (d != 1) out.torsion.push_back(d);
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

/// Bowen-Franks group coker(I - a).
inline AbelianGroupInvariants bowen_franks(const IntMatrix& a) { return smith_normal_form(identity_minus(a)); }

}  // namespace gsft
