#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "gsft/bigint.hpp"
#include "gsft/error.hpp"

namespace gsft {

/// Dense rectangular matrix of unbounded integers.
///
/// Entries are nonnegative unless the matrix was created signed; signed
/// matrices only appear as inputs to Smith normal form (I - A and friends).
class RectMatrix {
public:
    RectMatrix() = default;

    RectMatrix(std::size_t rows, std::size_t cols, bool is_signed = false)
        : rows_(rows), cols_(cols), signed_(is_signed), data_(rows * cols) {}

    RectMatrix(const std::vector<std::vector<BigInt>>& rows, bool is_signed = false) : signed_(is_signed) {
        rows_ = rows.size();
        cols_ = rows.empty() ? 0 : rows.front().size();
        data_.reserve(rows_ * cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (rows[r].size() != cols_)
                throw InputError("ragged matrix: row " + std::to_string(r) + " has " +
                                 std::to_string(rows[r].size()) + " entries, expected " + std::to_string(cols_));
            for (std::size_t c = 0; c < cols_; ++c) {
                check_sign(rows[r][c], r, c);
                data_.push_back(rows[r][c]);
            }
        }
    }

    RectMatrix(std::initializer_list<std::initializer_list<int>> rows, bool is_signed = false)
        : RectMatrix(from_lists(rows), is_signed) {}

    static RectMatrix identity(std::size_t n) {
        RectMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_signed() const { return signed_; }

    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, BigInt v) {
        check_sign(v, r, c);
        data_[r * cols_ + c] = std::move(v);
    }

    void add(std::size_t r, std::size_t c, const BigInt& v) { set(r, c, data_[r * cols_ + c] + v); }

    RectMatrix transpose() const {
        RectMatrix t(cols_, rows_, signed_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
        return t;
    }

    bool is_zero_one() const {
        return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0 || v == 1; });
    }

    std::vector<std::vector<BigInt>> to_rows() const {
        std::vector<std::vector<BigInt>> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
        return out;
    }

    /// Entry equality; signedness and labels are not compared.
    friend bool operator==(const RectMatrix& a, const RectMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const RectMatrix& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << m(r, c);
            os << ']';
        }
        return os << ']';
    }

protected:
    static std::vector<std::vector<BigInt>> from_lists(std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<std::vector<BigInt>> out;
        for (const auto& row : rows) out.emplace_back(row.begin(), row.end());
        return out;
    }

    void check_sign(const BigInt& v, std::size_t r, std::size_t c) const {
        if (!signed_ && v < 0)
            throw InputError("negative entry " + v.str() + " at (" + std::to_string(r) + "," + std::to_string(c) +
                             ") of a nonnegative matrix");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool signed_ = false;
    std::vector<BigInt> data_;
};

/// Square nonnegative matrix presenting a shift of finite type, with
/// optional state labels. Dimension 0 is the empty shift.
class IntMatrix : public RectMatrix {
public:
    IntMatrix() = default;

    explicit IntMatrix(std::size_t dim) : RectMatrix(dim, dim) {}

    IntMatrix(const std::vector<std::vector<BigInt>>& rows, std::vector<std::string> labels = {})
        : RectMatrix(rows) {
        if (rows_ > 0 && cols_ == 0) throw InputError("matrix rows are empty");
        if (rows_ != cols_)
            throw InputError("matrix is " + std::to_string(rows_) + "x" + std::to_string(cols_) + ", expected square");
        set_labels(std::move(labels));
    }

    IntMatrix(std::initializer_list<std::initializer_list<int>> rows, std::vector<std::string> labels = {})
        : IntMatrix(from_lists(rows), std::move(labels)) {}

    explicit IntMatrix(const RectMatrix& m, std::vector<std::string> labels = {}) : RectMatrix(m) {
        if (m.rows() != m.cols())
            throw InputError("matrix is " + std::to_string(rows_) + "x" + std::to_string(cols_) + ", expected square");
        if (m.is_signed()) {
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t c = 0; c < cols_; ++c) check_sign_unsigned((*this)(r, c), r, c);
            signed_ = false;
        }
        set_labels(std::move(labels));
    }

    static IntMatrix identity(std::size_t n) { return IntMatrix(RectMatrix::identity(n)); }

    std::size_t dim() const { return rows_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    std::string label(std::size_t i) const { return labels_.empty() ? std::to_string(i + 1) : labels_[i]; }

    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty()) {
            if (labels.size() != rows_) throw InputError("label count does not match matrix dimension");
            std::set<std::string> seen(labels.begin(), labels.end());
            if (seen.size() != labels.size()) throw InputError("state labels must be pairwise distinct");
        }
        labels_ = std::move(labels);
    }

    IntMatrix transpose() const { return IntMatrix(RectMatrix::transpose(), labels_); }

    IntMatrix principal_submatrix(const std::vector<std::size_t>& states) const {
        IntMatrix sub(states.size());
        for (std::size_t r = 0; r < states.size(); ++r)
            for (std::size_t c = 0; c < states.size(); ++c) sub.data_[r * states.size() + c] = (*this)(states[r], states[c]);
        if (!labels_.empty()) {
            std::vector<std::string> l;
            for (auto s : states) l.push_back(labels_[s]);
            sub.labels_ = std::move(l);
        }
        return sub;
    }

    BigInt trace() const {
        BigInt t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    BigInt out_degree(std::size_t i) const {
        BigInt s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }

    BigInt in_degree(std::size_t j) const {
        BigInt s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
        return s;
    }

private:
    void check_sign_unsigned(const BigInt& v, std::size_t r, std::size_t c) const {
        if (v < 0)
            throw InputError("negative entry " + v.str() + " at (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }

    std::vector<std::string> labels_;
};

inline RectMatrix mat_mul(const RectMatrix& a, const RectMatrix& b) {
    if (a.cols() != b.rows())
        throw InputError("dimension mismatch in product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    RectMatrix out(a.rows(), b.cols(), a.is_signed() || b.is_signed());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const BigInt& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out.add(i, j, aik * b(k, j));
        }
    return out;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return IntMatrix(mat_mul(a, b)); }

/// a^n by binary exponentiation; a^0 is the identity.
inline IntMatrix mat_power(const IntMatrix& a, unsigned long n) {
    IntMatrix result = IntMatrix::identity(a.dim());
    IntMatrix base = a;
    while (n > 0) {
        if (n & 1UL) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

/// trace(a^n), the number of points of period n of the shift presented by a.
inline BigInt trace_of_power(const IntMatrix& a, unsigned long n) {
    if (n == 0) throw InputError("trace_of_power needs n >= 1");
    return mat_power(a, n).trace();
}

/// I - a as a signed matrix.
inline RectMatrix identity_minus(const IntMatrix& a) {
    RectMatrix m(a.dim(), a.dim(), true);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m.set(i, j, (i == j ? BigInt(1) : BigInt(0)) - a(i, j));
    return m;
}

}  // namespace gsft
