#pragma once

// RAII wrapper over mpfr_t. Every operation states its rounding direction;
// precision is carried per value, there is no process-wide default.

#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "puiseux/arith/rational.hpp"

namespace puiseux {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_double(double d, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    /// Rounded value of q; `inexact` receives whether rounding occurred.
    static Real from_rational(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd, bool* inexact = nullptr) {
        Real r(prec);
        int t = mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        if (inexact) *inexact = t != 0;
        return r;
    }
    /// 2^e exactly.
    static Real pow2(long e, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Upper bound on half an ulp of this value at its precision (0 for zero).
    [[nodiscard]] Real ulp() const {
        if (is_zero()) return Real(64);
        return pow2(mpfr_get_exp(v_) - static_cast<long>(precision()), 64);
    }

    /// Exact rational value of this (finite) number.
    [[nodiscard]] Rational to_rational() const {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

    /// Decimal string with `digits` significant digits (0 = exact enough to round-trip).
    [[nodiscard]] std::string to_string(std::size_t digits = 0, mpfr_rnd_t rnd = MPFR_RNDN) const {
        if (is_zero()) return "0";
        mpfr_exp_t exp = 0;
        char* s = mpfr_get_str(nullptr, &exp, 10, digits, v_, rnd);
        std::string m(s);
        mpfr_free_str(s);
        std::string sign;
        if (!m.empty() && m[0] == '-') {
            sign = "-";
            m.erase(0, 1);
        }
        while (m.size() > 1 && m.back() == '0') m.pop_back();
        std::string out = sign + m.substr(0, 1);
        if (m.size() > 1) out += "." + m.substr(1);
        if (exp - 1 != 0) out += "e" + std::to_string(static_cast<long>(exp) - 1);
        return out;
    }

    mpfr_ptr get() { return v_; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

namespace real {

// Each returns the rounded result; the bool overloads report inexactness.
inline Real add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd, bool* inexact = nullptr) {
    Real r(prec);
    int t = mpfr_add(r.get(), a.get(), b.get(), rnd);
    if (inexact) *inexact = t != 0;
    return r;
}
inline Real sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd, bool* inexact = nullptr) {
    Real r(prec);
    int t = mpfr_sub(r.get(), a.get(), b.get(), rnd);
    if (inexact) *inexact = t != 0;
    return r;
}
inline Real mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd, bool* inexact = nullptr) {
    Real r(prec);
    int t = mpfr_mul(r.get(), a.get(), b.get(), rnd);
    if (inexact) *inexact = t != 0;
    return r;
}
inline Real div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_div(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real neg(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_hypot(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sqrt(r.get(), a.get(), rnd);
    return r;
}
inline Real log(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_log(r.get(), a.get(), rnd);
    return r;
}
inline Real max(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }
inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

}  // namespace real

}  // namespace puiseux
