#pragma once

/**
 * @file ball.hpp
 * @brief Complex midpoint-radius balls.
 *
 * A ComplexBall is the closed disk {z : |z - mid| <= rad}. Midpoints carry a
 * per-value MPFR precision; the radius is a 64-bit MPFR number always rounded
 * upwards. Every operation returns a disk that contains all results of the
 * exact operation on members of the operand disks, including the rounding
 * error of the midpoint computation.
 */

#include <algorithm>
#include <complex>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "puiseux/arith/real.hpp"

namespace puiseux {

/// Thrown when a ball operation cannot be certified at the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ComplexBall {
public:
    static constexpr mpfr_prec_t kRadiusPrec = 64;

    ComplexBall() : ComplexBall(0L) {}
    ComplexBall(int v) : ComplexBall(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    ComplexBall(long v) : re_(64), im_(64), rad_(kRadiusPrec) {  // NOLINT(google-explicit-constructor)
        mpfr_set_si(re_.get(), v, MPFR_RNDN);
    }
    ComplexBall(const Rational& q, mpfr_prec_t prec) : ComplexBall(q, Rational(0), prec) {}
    ComplexBall(const Rational& re, const Rational& im, mpfr_prec_t prec)
        : re_(prec), im_(prec), rad_(kRadiusPrec) {
        bool ir = false, ii = false;
        re_ = Real::from_rational(re, prec, MPFR_RNDN, &ir);
        im_ = Real::from_rational(im, prec, MPFR_RNDN, &ii);
        if (ir) add_radius(re_.ulp());
        if (ii) add_radius(im_.ulp());
    }
    ComplexBall(Real re, Real im, Real rad) : re_(std::move(re)), im_(std::move(im)), rad_(kRadiusPrec) {
        mpfr_set(rad_.get(), rad.get(), MPFR_RNDU);
    }

    [[nodiscard]] const Real& mid_re() const { return re_; }
    [[nodiscard]] const Real& mid_im() const { return im_; }
    [[nodiscard]] const Real& rad() const { return rad_; }
    [[nodiscard]] mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }

    /// Same midpoint, zero radius.
    [[nodiscard]] ComplexBall midpoint() const { return ComplexBall(re_, im_, Real(kRadiusPrec)); }
    /// Same midpoint, radius enlarged by `extra`.
    [[nodiscard]] ComplexBall inflated(const Real& extra) const {
        ComplexBall out(*this);
        out.add_radius(extra);
        return out;
    }
    /// Midpoint rounded to `prec` bits (rounding error added to the radius).
    [[nodiscard]] ComplexBall with_precision(mpfr_prec_t prec) const {
        bool ir = false, ii = false;
        Real r(prec), i(prec);
        ir = mpfr_set(r.get(), re_.get(), MPFR_RNDN) != 0;
        ii = mpfr_set(i.get(), im_.get(), MPFR_RNDN) != 0;
        ComplexBall out(std::move(r), std::move(i), rad_);
        if (ir) out.add_radius(out.re_.ulp());
        if (ii) out.add_radius(out.im_.ulp());
        return out;
    }

    /// Upper bound on |z| over the ball.
    [[nodiscard]] Real abs_upper() const {
        Real m = real::hypot(re_, im_, kRadiusPrec, MPFR_RNDU);
        return real::add(m, rad_, kRadiusPrec, MPFR_RNDU);
    }
    /// Lower bound on |z| over the ball (0 when the ball touches the origin).
    [[nodiscard]] Real abs_lower() const {
        Real m = real::hypot(re_, im_, kRadiusPrec, MPFR_RNDD);
        Real d = real::sub(m, rad_, kRadiusPrec, MPFR_RNDD);
        if (d.sign() < 0) return Real(kRadiusPrec);
        return d;
    }
    /// Upper bound on |mid|.
    [[nodiscard]] Real mid_abs_upper() const { return real::hypot(re_, im_, kRadiusPrec, MPFR_RNDU); }

    [[nodiscard]] bool contains_zero() const { return abs_lower().is_zero(); }
    [[nodiscard]] bool exact_zero() const { return re_.is_zero() && im_.is_zero() && rad_.is_zero(); }

    /// True when the two disks intersect.
    [[nodiscard]] bool overlaps(const ComplexBall& o) const { return (*this - o).contains_zero(); }

    /// True when `o` lies inside this disk.
    [[nodiscard]] bool contains(const ComplexBall& o) const {
        ComplexBall d = midpoint() - o.midpoint();
        Real reach = real::add(d.abs_upper(), o.rad_, kRadiusPrec, MPFR_RNDU);
        return real::cmp(reach, rad_) <= 0;
    }

    [[nodiscard]] std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    /// Natural log of |mid| as a double (-inf for zero midpoint).
    [[nodiscard]] double log_abs_mid() const {
        Real m = real::hypot(re_, im_, 64, MPFR_RNDN);
        if (m.is_zero()) return -std::numeric_limits<double>::infinity();
        return real::log(m, 64, MPFR_RNDN).to_double();
    }

    friend ComplexBall operator-(const ComplexBall& a) {
        return ComplexBall(real::neg(a.re_), real::neg(a.im_), a.rad_);
    }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        const mpfr_prec_t p = std::max(a.precision(), b.precision());
        bool ir = false, ii = false;
        Real re = real::add(a.re_, b.re_, p, MPFR_RNDN, &ir);
        Real im = real::add(a.im_, b.im_, p, MPFR_RNDN, &ii);
        ComplexBall out(std::move(re), std::move(im), real::add(a.rad_, b.rad_, kRadiusPrec, MPFR_RNDU));
        if (ir) out.add_radius(out.re_.ulp());
        if (ii) out.add_radius(out.im_.ulp());
        return out;
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return a + (-b); }

    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        const mpfr_prec_t p = std::max(a.precision(), b.precision());
        const mpfr_prec_t wp = p + 8;
        // Products at extended precision are exact only if wp >= sum of precisions;
        // track each rounding explicitly instead.
        Real err(kRadiusPrec);
        auto track = [&](const Real& v, bool inexact) {
            if (inexact) err = real::add(err, v.ulp(), kRadiusPrec, MPFR_RNDU);
        };
        bool f = false;
        Real rr = real::mul(a.re_, b.re_, wp, MPFR_RNDN, &f);
        track(rr, f);
        Real ii = real::mul(a.im_, b.im_, wp, MPFR_RNDN, &f);
        track(ii, f);
        Real ri = real::mul(a.re_, b.im_, wp, MPFR_RNDN, &f);
        track(ri, f);
        Real ir = real::mul(a.im_, b.re_, wp, MPFR_RNDN, &f);
        track(ir, f);
        Real re = real::sub(rr, ii, p, MPFR_RNDN, &f);
        track(re, f);
        Real im = real::add(ri, ir, p, MPFR_RNDN, &f);
        track(im, f);

        Real am = a.mid_abs_upper(), bm = b.mid_abs_upper();
        Real rad = real::mul(am, b.rad_, kRadiusPrec, MPFR_RNDU);
        rad = real::add(rad, real::mul(bm, a.rad_, kRadiusPrec, MPFR_RNDU), kRadiusPrec, MPFR_RNDU);
        rad = real::add(rad, real::mul(a.rad_, b.rad_, kRadiusPrec, MPFR_RNDU), kRadiusPrec, MPFR_RNDU);
        rad = real::add(rad, err, kRadiusPrec, MPFR_RNDU);
        return ComplexBall(std::move(re), std::move(im), std::move(rad));
    }

    /// Enclosure of 1/z over the ball; throws PrecisionExhausted if the ball meets 0.
    [[nodiscard]] ComplexBall inverse() const {
        const mpfr_prec_t p = precision();
        Real mid_low = real::hypot(re_, im_, kRadiusPrec, MPFR_RNDD);
        Real gap = real::sub(mid_low, rad_, kRadiusPrec, MPFR_RNDD);
        if (gap.sign() <= 0) throw PrecisionExhausted("division by a ball containing zero");
        // Approximate center conj(m)/|m|^2, then bound |1/m - z| rigorously via 1 - z*m.
        Real n2 = real::add(real::mul(re_, re_, p + 16, MPFR_RNDN), real::mul(im_, im_, p + 16, MPFR_RNDN), p + 16,
                            MPFR_RNDN);
        Real zr = real::div(re_, n2, p, MPFR_RNDN);
        Real zi = real::neg(real::div(im_, n2, p, MPFR_RNDN));
        ComplexBall z(zr, zi, Real(kRadiusPrec));
        ComplexBall defect = ComplexBall(1L) - z * midpoint();
        // |1/m - z| = |1 - z m| / |m|
        Real center_err = real::div(defect.abs_upper(), mid_low, kRadiusPrec, MPFR_RNDU);
        // |1/b - 1/m| <= r / (|m| (|m| - r))
        Real denom = real::mul(mid_low, gap, kRadiusPrec, MPFR_RNDD);
        Real spread = real::div(rad_, denom, kRadiusPrec, MPFR_RNDU);
        return z.inflated(real::add(center_err, spread, kRadiusPrec, MPFR_RNDU));
    }

    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) { return a * b.inverse(); }

    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }
    ComplexBall& operator/=(const ComplexBall& o) { return *this = *this / o; }

    /// Representation equality (same midpoint and radius), not mathematical equality.
    friend bool operator==(const ComplexBall& a, const ComplexBall& b) {
        return mpfr_equal_p(a.re_.get(), b.re_.get()) && mpfr_equal_p(a.im_.get(), b.im_.get()) &&
               mpfr_equal_p(a.rad_.get(), b.rad_.get());
    }

    [[nodiscard]] std::string to_string(std::size_t digits = 20) const {
        std::string out = re_.to_string(digits);
        if (!im_.is_zero()) {
            std::string im = im_.to_string(digits);
            out += im[0] == '-' ? " - " + im.substr(1) : " + " + im;
            out += "i";
        }
        return "[" + out + " +/- " + rad_.to_string(3, MPFR_RNDU) + "]";
    }

private:
    void add_radius(const Real& e) { rad_ = real::add(rad_, e, kRadiusPrec, MPFR_RNDU); }

    Real re_, im_, rad_;
};

inline bool is_zero(const ComplexBall& b) { return b.exact_zero(); }
inline bool maybe_zero(const ComplexBall& b) { return b.contains_zero(); }

inline std::ostream& operator<<(std::ostream& os, const ComplexBall& b) { return os << b.to_string(); }

/// Ball enclosure of a rational-coefficient polynomial at z.
template <class P>
ComplexBall eval_ball(const P& poly, const ComplexBall& z) {
    const mpfr_prec_t p = z.precision();
    ComplexBall acc(0L);
    const auto& cs = poly.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * z + ComplexBall(*it, p);
    return acc;
}

}  // namespace puiseux
