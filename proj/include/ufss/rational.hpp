#pragma once

// Arbitrary-precision rational scalars. Values are kept canonical (lowest
// terms, positive denominator) by the underlying representation.

#include <boost/multiprecision/cpp_int.hpp>

#include "ufss/errors.hpp"
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ufss {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Int& n) { return n.sign(); }

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(Int(num), Int(den));
}

inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// "p/q" or "p"; no decimal forms.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&]() { return DomainError("bad rational literal: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string to_string(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) out += "/" + denominator(q).str();
    return out;
}

// Midpoint helper used throughout interval refinement.
inline Rational midpoint(const Rational& lo, const Rational& hi) {
    return (lo + hi) / 2;
}

}  // namespace ufss
