#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision integers and rationals (GMP backed).
 *
 * mpq_class values built through make_rational are always canonical:
 * lowest terms, positive denominator, zero represented as 0/1.
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace puiseux {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool maybe_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "a" or "a/b" with optional leading sign.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
}

inline Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer integer_lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Rational pow(const Rational& base, unsigned e) {
    Rational out(1), b(base);
    while (e) {
        if (e & 1U) out *= b;
        b *= b;
        e >>= 1U;
    }
    return out;
}

/// Largest integer <= q.
inline Integer floor(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return z.get_si();
}

}  // namespace puiseux
