#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gsft/bigint.hpp"
#include "gsft/matrix.hpp"

namespace gsft {

/// Integer polynomial in t, constant term first. The zero polynomial has no
/// coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) - b.coeff(k);
        return IntPolynomial(std::move(out));
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const BigInt& c = coeffs_[k];
            if (c == 0) continue;
            BigInt mag = abs(c);
            if (s.empty()) {
                if (c < 0) s += "-";
            } else {
                s += (c < 0) ? " - " : " + ";
            }
            if (k == 0 || mag != 1) s += mag.str();
            if (k >= 1) s += "t";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

namespace detail {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rational(const IntPolynomial& p) {
    RatPoly r;
    for (const auto& c : p.coefficients()) r.emplace_back(c);
    return r;
}

/// Quotient and remainder over the rationals; divisor must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly num, const RatPoly& den) {
    RatPoly quot;
    trim(num);
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    while (!num.empty() && num.size() >= den.size()) {
        std::size_t shift = num.size() - den.size();
        Rational factor = num.back() / den.back();
        quot[shift] = factor;
        for (std::size_t k = 0; k < den.size(); ++k) num[k + shift] -= factor * den[k];
        num.pop_back();
        trim(num);
    }
    trim(quot);
    return {quot, num};
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace detail

/// Scales a rational polynomial to a primitive integer polynomial whose
/// constant term is positive (or, when the constant term vanishes, whose
/// leading coefficient is positive).
inline IntPolynomial normalize_primitive(const detail::RatPoly& p) {
    BigInt den = 1;
    for (const auto& c : p) {
        BigInt d = boost::multiprecision::denominator(c);
        den = den / gcd(den, d) * d;
    }
    std::vector<BigInt> ints;
    BigInt content = 0;
    for (const auto& c : p) {
        BigInt v = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
        content = gcd(content, abs(v));
        ints.push_back(v);
    }
    IntPolynomial out(ints);
    if (out.is_zero()) return out;
    std::vector<BigInt> coeffs = out.coefficients();
    for (auto& c : coeffs) c /= content;
    const BigInt& pivot = coeffs.front() != 0 ? coeffs.front() : coeffs.back();
    if (pivot < 0)
        for (auto& c : coeffs) c = -c;
    return IntPolynomial(std::move(coeffs));
}

inline IntPolynomial normalize_primitive(const IntPolynomial& p) { return normalize_primitive(detail::to_rational(p)); }

/// True when q divides p over the rationals.
inline bool divides_over_q(const IntPolynomial& q, const IntPolynomial& p) {
    if (q.is_zero()) return p.is_zero();
    return detail::divmod(detail::to_rational(p), detail::to_rational(q)).second.empty();
}

/// det(I - t a), computed from the characteristic polynomial by the
/// Faddeev-LeVerrier recursion (all divisions are exact). Signed square
/// matrices are accepted as well.
inline IntPolynomial char_poly_reciprocal(const RectMatrix& a) {
    if (a.rows() != a.cols()) throw InputError("characteristic polynomial needs a square matrix");
    const std::size_t n = a.rows();
    // c[k] is the coefficient of x^(n-k) in det(xI - a), which is the
    // coefficient of t^k in det(I - ta).
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    RectMatrix m(n, n, true);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        RectMatrix next = mat_mul(a, m);
        for (std::size_t i = 0; i < n; ++i) next.add(i, i, c[k - 1]);
        m = std::move(next);
        RectMatrix am = mat_mul(a, m);
        BigInt tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[k] = -tr / BigInt(k);
    }
    return IntPolynomial(std::move(c));
}

/// Least common multiple over Q, normalized as in normalize_primitive.
inline IntPolynomial poly_lcm(const std::vector<IntPolynomial>& ps) {
    detail::RatPoly acc{Rational(1)};
    for (const auto& p : ps) {
        if (p.is_zero()) throw InputError("poly_lcm: zero polynomial in input");
        auto rp = detail::to_rational(p);
        auto g = detail::gcd(acc, rp);
        acc = detail::divmod(detail::mul(acc, rp), g).first;
    }
    return normalize_primitive(acc);
}

}  // namespace gsft
