#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "gsft/error.hpp"

namespace gsft {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt parse_bigint(const std::string& text) {
    if (text.empty()) throw InputError("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw InputError("bad integer literal '" + text + "'");
    for (std::size_t k = start; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9') throw InputError("bad integer literal '" + text + "'");
    return BigInt(text);
}

// Narrowing used by enumeration code; large multiplicities cannot be
// enumerated anyway.
inline std::uint64_t to_count(const BigInt& v) {
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max()))
        throw CapExceeded("multiplicity " + v.str() + " too large to enumerate");
    return v.convert_to<std::uint64_t>();
}

}  // namespace gsft
