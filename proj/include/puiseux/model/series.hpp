#pragma once

/**
 * @file series.hpp
 * @brief Truncated Laurent series in t, Puiseux series in xi = x - x0 = t^s,
 *        and substitution of a truncated series into F.
 */

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith/ball.hpp"
#include "puiseux/arith/number_field.hpp"
#include "puiseux/model/diff_poly.hpp"

namespace puiseux {

/// Rational scalar in the domain of `like` (same modulus or precision).
inline Rational embed(const Rational& q, const Rational&) { return q; }
inline NumberFieldElem embed(const Rational& q, const NumberFieldElem& like) {
    return like.modulus() ? NumberFieldElem(like.modulus(), UniPoly(q)) : NumberFieldElem(q);
}
inline ComplexBall embed(const Rational& q, const ComplexBall& like) { return ComplexBall(q, like.precision()); }

inline constexpr long kExactPrecision = std::numeric_limits<long>::max();

/**
 * Laurent series sum_e c_e t^e known for all exponents e < prec. Coefficients
 * are stored densely from `first`. prec == kExactPrecision means the series
 * is a Laurent polynomial known exactly.
 */
template <class T>
class Laurent {
public:
    Laurent() = default;
    Laurent(long first, std::vector<T> coeffs, long prec = kExactPrecision)
        : first_(first), c_(std::move(coeffs)), prec_(prec) {
        clip();
    }

    static Laurent monomial(const T& c, long e) { return Laurent(e, {c}); }

    /// Polynomial p(t) shifted by t^shift.
    static Laurent from_poly(const Poly<T>& p, long shift = 0) { return Laurent(shift, p.coeffs()); }

    [[nodiscard]] long prec() const { return prec_; }
    [[nodiscard]] bool exact() const { return prec_ == kExactPrecision; }
    [[nodiscard]] long first() const { return first_; }
    [[nodiscard]] const std::vector<T>& stored() const { return c_; }

    /// Lowest exponent that may carry a nonzero coefficient.
    [[nodiscard]] long low() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!is_zero(c_[i])) return first_ + static_cast<long>(i);
        return prec_;
    }
    /// Highest stored exponent with a not-exactly-zero coefficient (LONG_MIN if none).
    [[nodiscard]] long high() const {
        for (std::size_t i = c_.size(); i-- > 0;)
            if (!is_zero(c_[i])) return first_ + static_cast<long>(i);
        return std::numeric_limits<long>::min();
    }
    /// Lowest exponent whose coefficient is certainly nonzero, if any below prec.
    [[nodiscard]] std::optional<long> certain_order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!maybe_zero(c_[i])) return first_ + static_cast<long>(i);
        return std::nullopt;
    }

    [[nodiscard]] T coeff(long e, const T& zero) const {
        if (e >= prec_) throw std::out_of_range("coefficient beyond series precision");
        if (e < first_ || e >= first_ + static_cast<long>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(e - first_)];
    }

    /// True when every coefficient is exactly zero and the series is exact.
    [[nodiscard]] bool identically_zero() const { return exact() && high() == std::numeric_limits<long>::min(); }

    [[nodiscard]] Laurent truncated(long bound) const {
        if (bound >= prec_) return *this;
        Laurent out(*this);
        const bool drops = out.high() >= bound;
        if (drops || !exact()) out.prec_ = std::min(prec_, bound);
        out.clip_to(bound);
        return out;
    }

    /// t^k * this.
    [[nodiscard]] Laurent shifted(long k) const {
        Laurent out(*this);
        out.first_ += k;
        if (!exact()) out.prec_ += k;
        return out;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }
    friend Laurent operator-(const Laurent& a) {
        Laurent out(a);
        for (auto& c : out.c_) c = -c;
        return out;
    }

    [[nodiscard]] Laurent scaled(const T& k) const {
        Laurent out(*this);
        for (auto& c : out.c_) c = c * k;
        return out;
    }

    /// Product known for exponents < bound (and < the operands' joint precision).
    friend Laurent multiply(const Laurent& a, const Laurent& b, long bound = kExactPrecision) {
        const long la = a.low(), lb = b.low();
        long prec = kExactPrecision;
        if (!a.exact()) prec = std::min(prec, sat_add(a.prec_, lb));
        if (!b.exact()) prec = std::min(prec, sat_add(b.prec_, la));
        const bool both_empty_high =
            a.high() == std::numeric_limits<long>::min() || b.high() == std::numeric_limits<long>::min();
        if (both_empty_high) {
            // One factor is zero below its precision.
            Laurent out;
            out.first_ = std::min(prec, bound);
            out.prec_ = (a.identically_zero() || b.identically_zero()) ? kExactPrecision : std::min(prec, bound);
            return out;
        }
        const long top = a.high() + b.high();
        long limit = std::min(prec, bound);
        if (prec == kExactPrecision && top < bound) limit = kExactPrecision;
        const long hi = std::min(top, limit == kExactPrecision ? top : limit - 1);
        const long lo = la + lb;
        Laurent out;
        out.first_ = lo;
        out.prec_ = limit;
        if (hi < lo) return out;
        out.c_.assign(static_cast<std::size_t>(hi - lo + 1), T(0));
        for (long ea = la; ea <= a.high(); ++ea) {
            const T& ca = a.c_[static_cast<std::size_t>(ea - a.first_)];
            if (is_zero(ca)) continue;
            for (long eb = lb; eb <= b.high() && ea + eb <= hi; ++eb) {
                const T& cb = b.c_[static_cast<std::size_t>(eb - b.first_)];
                if (is_zero(cb)) continue;
                auto& slot = out.c_[static_cast<std::size_t>(ea + eb - lo)];
                slot = slot + ca * cb;
            }
        }
        out.clip();
        return out;
    }

private:
    static long sat_add(long a, long b) {
        if (a == kExactPrecision || b == kExactPrecision) return kExactPrecision;
        return a + b;
    }

    static Laurent combine(const Laurent& a, const Laurent& b, bool subtract) {
        Laurent out;
        out.prec_ = std::min(a.prec_, b.prec_);
        const bool a_empty = a.c_.empty(), b_empty = b.c_.empty();
        if (a_empty && b_empty) {
            out.first_ = std::min(a.first_, b.first_);
            return out;
        }
        const long lo = a_empty ? b.first_ : b_empty ? a.first_ : std::min(a.first_, b.first_);
        const long hi = std::max(a_empty ? lo : a.first_ + static_cast<long>(a.c_.size()),
                                 b_empty ? lo : b.first_ + static_cast<long>(b.c_.size()));
        out.first_ = lo;
        out.c_.assign(static_cast<std::size_t>(hi - lo), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[static_cast<std::size_t>(a.first_ - lo) + i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            auto& slot = out.c_[static_cast<std::size_t>(b.first_ - lo) + i];
            if (subtract) slot = slot - b.c_[i];
            else slot = slot + b.c_[i];
        }
        out.clip();
        return out;
    }

    void clip_to(long bound) {
        if (c_.empty()) return;
        const long last = first_ + static_cast<long>(c_.size()) - 1;
        if (last >= bound) c_.resize(static_cast<std::size_t>(std::max(0L, bound - first_)));
    }

    void clip() {
        if (!exact()) clip_to(prec_);
        // Drop exact-zero tails and heads to keep storage tight.
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && is_zero(c_[lead])) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            first_ += static_cast<long>(lead);
        }
    }

    long first_ = 0;
    std::vector<T> c_;
    long prec_ = kExactPrecision;
};

/**
 * Truncated Puiseux series sum_{k=0..N} c_k xi^{(r+k)/s} around x0. The empty
 * series is the zero series. Nonempty series have c_0 != 0 (maybe_zero false
 * for exact domains).
 */
template <class T>
struct TruncatedSeries {
    Rational x0;
    long s = 1;
    long r = 0;
    std::vector<T> coeffs;

    [[nodiscard]] bool zero_series() const { return coeffs.empty(); }
    /// Number of correction terms after the leading one.
    [[nodiscard]] long corrections() const { return coeffs.empty() ? 0 : static_cast<long>(coeffs.size()) - 1; }
    [[nodiscard]] Rational exponent(long k) const { return make_rational(r + k, s); }
    /// (r + N)/s.
    [[nodiscard]] Rational truncation_order() const { return exponent(corrections()); }

    /// The series as a Laurent polynomial in t with xi = t^s.
    [[nodiscard]] Laurent<T> in_t() const { return Laurent<T>(r, coeffs); }

    /// d/dxi as a Laurent polynomial in t: c_k (r+k)/s t^{r+k-s}.
    [[nodiscard]] Laurent<T> derivative_in_t() const {
        std::vector<T> d;
        d.reserve(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            d.push_back(coeffs[k] * embed(make_rational(r + static_cast<long>(k), s), coeffs[k]));
        return Laurent<T>(r - s, std::move(d));
    }
};

/// Dense series from exponent -> coefficient data (exponents rational in xi).
inline TruncatedSeries<Rational> from_exponent_map(const std::map<Rational, Rational>& terms, const Rational& x0,
                                                   long min_s = 1) {
    TruncatedSeries<Rational> out;
    out.x0 = x0;
    Integer den = min_s;
    for (const auto& [e, c] : terms) den = integer_lcm(den, e.get_den());
    out.s = den.get_si();
    if (terms.empty()) return out;
    out.r = to_long(floor(terms.begin()->first * out.s));
    const long top = to_long(floor(terms.rbegin()->first * out.s));
    out.coeffs.assign(static_cast<std::size_t>(top - out.r + 1), Rational(0));
    for (const auto& [e, c] : terms) out.coeffs[static_cast<std::size_t>(to_long(floor(e * out.s)) - out.r)] = c;
    return out;
}

/// Outcome of substituting a truncated series into F.
template <class T>
struct Residual {
    long s = 1;
    Laurent<T> series;  ///< F(x0 + t^s, phi, phi') in t

    [[nodiscard]] bool identically_zero() const { return series.identically_zero(); }
    /// Exact order in xi (exact domains); nullopt when identically zero or unresolved below the bound.
    [[nodiscard]] std::optional<Rational> order() const {
        auto o = series.certain_order();
        if (!o) return std::nullopt;
        return make_rational(*o, s);
    }
    /// Everything strictly below this xi-exponent is (enclosed as) zero.
    [[nodiscard]] Rational known_zero_below() const {
        if (series.exact()) {
            long lo = series.low();
            return lo == kExactPrecision ? Rational(0) : make_rational(lo, s);
        }
        return make_rational(std::min(series.low(), series.prec()), s);
    }
};

namespace detail {

/// Smallest t-exponent bound covering every residual term (makes the result exact).
template <class T>
long full_bound(const DiffPoly& f, const Laurent<T>& phi, const Laurent<T>& dphi, long s) {
    const long ph = phi.high(), dh = dphi.high();
    long top = 0;
    constexpr long none = std::numeric_limits<long>::min();
    for (const auto& [k, a] : f.terms()) {
        if ((k.p && ph == none) || (k.q && dh == none)) continue;
        long e = a.degree() * s;
        if (k.p) e += static_cast<long>(k.p) * ph;
        if (k.q) e += static_cast<long>(k.q) * dh;
        top = std::max(top, e);
    }
    return top + 1;
}

template <class T>
Laurent<T> product_bounded(const std::vector<const Laurent<T>*>& factors, long bound) {
    for (const auto* f : factors)
        if (f->identically_zero()) return Laurent<T>();
    std::vector<long> suffix(factors.size() + 1, 0);
    for (std::size_t i = factors.size(); i-- > 0;) suffix[i] = suffix[i + 1] + factors[i]->low();
    Laurent<T> acc = *factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
        const long b = bound == kExactPrecision ? kExactPrecision : bound - suffix[i + 1];
        acc = multiply(acc, *factors[i], b);
    }
    return acc.truncated(bound);
}

}  // namespace detail

/**
 * F(x, phi, phi') expanded in t (xi = t^s) for all t-exponents < bound_t;
 * bound_t = kExactPrecision requests the exact residual polynomial.
 * `like` fixes the coefficient domain (modulus or precision).
 */
template <class T>
Residual<T> substitute_in_t(const DiffPoly& f, const TruncatedSeries<T>& phi, long bound_t, const T& like) {
    const long s = phi.s;
    Laurent<T> y = phi.in_t();
    Laurent<T> dy = phi.derivative_in_t();
    if (bound_t == kExactPrecision) bound_t = detail::full_bound(f, y, dy, s);
    const T one = embed(Rational(1), like);

    // Powers are needed below bound_t minus the lowest exponent of the cofactors,
    // which is negative only for series with negative exponents.
    const long pmax = f.degree_in_y(), qmax = f.order_in_dy();
    const long ylow = std::min(0L, y.identically_zero() ? 0L : y.low());
    const long dlow = std::min(0L, dy.identically_zero() ? 0L : dy.low());
    std::vector<Laurent<T>> ypow{Laurent<T>::monomial(one, 0)}, dpow{Laurent<T>::monomial(one, 0)};
    for (long i = 1; i <= pmax; ++i)
        ypow.push_back(multiply(ypow.back(), y, bound_t - qmax * dlow - (pmax - i) * ylow));
    for (long j = 1; j <= qmax; ++j)
        dpow.push_back(multiply(dpow.back(), dy, bound_t - pmax * ylow - (qmax - j) * dlow));

    Residual<T> out;
    out.s = s;
    out.series = Laurent<T>(0, {}, kExactPrecision);
    for (const auto& [k, a] : f.terms()) {
        // a(x0 + t^s) as a polynomial in t.
        UniPoly shifted = a.taylor_shift(phi.x0);
        std::vector<T> ac(static_cast<std::size_t>(shifted.degree() * s + 1), embed(Rational(0), like));
        for (std::size_t i = 0; i < shifted.coeffs().size(); ++i)
            ac[i * static_cast<std::size_t>(s)] = embed(shifted.coeffs()[i], like);
        Laurent<T> at(0, std::move(ac));
        std::vector<const Laurent<T>*> factors{&at};
        if (k.p) factors.push_back(&ypow[k.p]);
        if (k.q) factors.push_back(&dpow[k.q]);
        Laurent<T> term = detail::product_bounded(factors, bound_t);
        out.series = out.series + term;
    }
    out.series = out.series.truncated(bound_t);
    return out;
}

/// Residual up to (and including) xi-order work_order; exact when work_order is large enough.
template <class T>
Residual<T> substitute_series(const DiffPoly& f, const TruncatedSeries<T>& phi, const Rational& work_order,
                              const T& like) {
    if (!phi.zero_series() && work_order < phi.truncation_order())
        throw std::invalid_argument("work order below the truncation order of the series");
    const Rational scaled = work_order * phi.s;
    return substitute_in_t(f, phi, to_long(floor(scaled)) + 1, like);
}

/// Exact residual polynomial (no truncation).
template <class T>
Residual<T> substitute_exact(const DiffPoly& f, const TruncatedSeries<T>& phi, const T& like) {
    return substitute_in_t(f, phi, kExactPrecision, like);
}

}  // namespace puiseux
