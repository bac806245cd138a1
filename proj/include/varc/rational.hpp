#ifndef VARC_RATIONAL_HPP
#define VARC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace varc {

// Exact arithmetic everywhere. cpp_rational keeps values canonical:
// gcd(|num|, den) = 1 and den > 0, with arbitrary-precision components.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// binomial(m, l) for integer m (possibly negative) and l >= 0:
// m(m-1)...(m-l+1)/l!
inline Rational binomial(long long m, unsigned l) {
    Rational r = 1;
    for (unsigned i = 0; i < l; ++i) {
        r *= Rational(m - static_cast<long long>(i));
        r /= Rational(static_cast<long long>(i) + 1);
    }
    return r;
}

// Parses "p", "-p", "p/q". Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

} // namespace varc

#endif
