#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pqmap {

// All curvatures, slacks and bound values in this library are exact
// rationals; no identity is ever checked with a tolerance.  cpp_rational
// keeps small values in machine words and grows to arbitrary precision
// on overflow, which is exactly the escalation we need for quantities
// like b^r in the area bounds.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

// Renders as "num/den", or just "num" when the denominator is 1.
inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

inline BigInt pow_int(BigInt base, unsigned exp) {
    BigInt result = 1;
    while (exp > 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

}  // namespace pqmap
