#pragma once

// Exact arithmetic support for the rational ("exact") numeric mode.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace fracparts {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Reduces r into [0, 1).
inline Rational mod1(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);  // always > 0, canonical
    BigInt q = num / den;
    BigInt rem = num - q * den;
    if (rem < 0) rem += den;
    return Rational(rem, den);
}

// ||r|| = min(frac, 1 - frac), exact.
inline Rational torus_dist_exact(const Rational& r) {
    Rational f = mod1(r);
    Rational g = 1 - f;
    return f < g ? f : g;
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Parses "p/q" (q > 0 after normalization).  Plain integers also accepted.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad rational literal '" + s + "'");
    }
}

}  // namespace fracparts
