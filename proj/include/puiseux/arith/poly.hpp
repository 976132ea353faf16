#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a coefficient ring.
 *
 * Poly<T> stores coefficients by ascending degree and keeps the leading
 * coefficient nonzero (the zero polynomial has no coefficients). T may be a
 * field (Rational, NumberFieldElem, ComplexBall) or an integral domain such as
 * Poly<Rational>; field-only operations (divmod, gcd, monic) require an
 * invertible leading coefficient, ring-only code paths use exact_div.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith/rational.hpp"

namespace puiseux {

template <class T>
class Poly;

template <class T>
bool is_zero(const Poly<T>& p);

template <class T>
class Poly {
public:
    using value_type = T;

    Poly() = default;
    Poly(int c) : Poly(T(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(const T& c) {           // NOLINT(google-explicit-constructor)
        coeffs_.push_back(c);
        normalize();
    }
    explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

    static Poly monomial(const T& c, std::size_t degree) {
        std::vector<T> v(degree + 1, T(0));
        v[degree] = c;
        return Poly(std::move(v));
    }
    static Poly variable() { return monomial(T(1), 1); }

    /// -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    [[nodiscard]] bool zero() const { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }

    [[nodiscard]] const T& lc() const {
        if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    /// Coefficient of x^i, zero beyond the degree.
    [[nodiscard]] T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
    const T& operator[](std::size_t i) const { return coeffs_.at(i); }

    /// Lowest index with a nonzero coefficient; -1 for zero.
    [[nodiscard]] long valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!is_zero(coeffs_[i])) return static_cast<long>(i);
        return -1;
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(out));
    }
    Poly scaled(const T& c) const {
        Poly out(*this);
        for (auto& v : out.coeffs_) v = v * c;
        out.normalize();
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Horner evaluation in any algebra U that accepts T coefficients.
    template <class U>
    U eval(const U& x) const {
        U acc = U(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    [[nodiscard]] Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<T> out(coeffs_.size() - 1, T(0));
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * T(static_cast<long>(i));
        return Poly(std::move(out));
    }

    /// p(q(x)).
    [[nodiscard]] Poly compose(const Poly& q) const {
        Poly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Poly(*it);
        return acc;
    }

    /// p(x + a).
    [[nodiscard]] Poly taylor_shift(const T& a) const { return compose(Poly({a, T(1)})); }

    /// p(-x).
    [[nodiscard]] Poly reflect() const {
        Poly out(*this);
        for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
        return out;
    }

    /// Field division with remainder.
    [[nodiscard]] std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.zero()) throw std::domain_error("polynomial division by zero");
        Poly r(*this);
        if (r.degree() < d.degree()) return {Poly(), r};
        std::vector<T> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), T(0));
        const T inv_lc = T(1) / d.lc();
        while (!r.zero() && r.degree() >= d.degree()) {
            const auto shift = static_cast<std::size_t>(r.degree() - d.degree());
            const T f = r.lc() * inv_lc;
            q[shift] = f;
            for (std::size_t i = 0; i < d.coeffs_.size(); ++i) r.coeffs_[i + shift] -= f * d.coeffs_[i];
            r.coeffs_.pop_back();
            r.normalize();
        }
        return {Poly(std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    /// lc(d)^(deg a - deg d + 1) * a mod d, computed without division.
    [[nodiscard]] Poly pseudo_rem(const Poly& d) const {
        if (d.zero()) throw std::domain_error("pseudo remainder by zero");
        Poly r(*this);
        if (r.degree() < d.degree()) return r;
        long e = r.degree() - d.degree() + 1;
        while (!r.zero() && r.degree() >= d.degree()) {
            const auto shift = static_cast<std::size_t>(r.degree() - d.degree());
            const T f = r.lc();
            r = r.scaled(d.lc()) - monomial(f, shift) * d;
            --e;
        }
        for (; e > 0; --e) r = r.scaled(d.lc());
        return r;
    }

    [[nodiscard]] Poly monic() const {
        if (zero()) return *this;
        return scaled(T(1) / lc());
    }

    [[nodiscard]] std::string to_string(const std::string& var = "x") const;

private:
    void normalize() {
        while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

template <class T>
bool is_zero(const Poly<T>& p) {
    return p.zero();
}

template <class T>
Poly<T> pow(const Poly<T>& base, unsigned e) {
    Poly<T> out(T(1)), b(base);
    while (e) {
        if (e & 1U) out *= b;
        b *= b;
        e >>= 1U;
    }
    return out;
}

inline Rational exact_div(const Rational& a, const Rational& b) {
    if (is_zero(b)) throw std::domain_error("division by zero");
    return a / b;
}

/// Division known to be exact in an integral domain; throws otherwise.
template <class T>
Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
    if (b.zero()) throw std::domain_error("exact division by zero polynomial");
    if (a.zero()) return a;
    if (a.degree() < b.degree()) throw std::domain_error("inexact polynomial division");
    std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), T(0));
    Poly<T> r(a);
    while (!r.zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        const T f = exact_div(r.lc(), b.lc());
        q[shift] = f;
        r -= Poly<T>::monomial(f, shift) * b;
    }
    if (!r.zero()) throw std::domain_error("inexact polynomial division");
    return Poly<T>(std::move(q));
}

/// Monic gcd over a field; gcd(0, 0) = 0.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    while (!b.zero()) {
        Poly<T> r = a % b;
        a = std::move(b);
        b = r.zero() ? r : r.monic();
    }
    return a.monic();
}

/// Extended Euclid over a field: returns (g, u, v) with u*a + v*b = g monic.
template <class T>
struct Bezout {
    Poly<T> g, u, v;
};

template <class T>
Bezout<T> extended_gcd(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r0 = a, r1 = b, s0(T(1)), s1, t0, t1(T(1));
    while (!r1.zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<T> s2 = s0 - q * s1;
        Poly<T> t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.zero()) return {r0, s0, t0};
    const T inv = T(1) / r0.lc();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

namespace detail {

inline std::string coeff_text(const Rational& c) { return to_string(c); }

template <class T>
std::string coeff_text(const T& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

}  // namespace detail

template <class T>
std::string Poly<T>::to_string(const std::string& var) const {
    if (zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const T& c = coeffs_[static_cast<std::size_t>(i)];
        if (is_zero(c)) continue;
        std::string ct = detail::coeff_text(c);
        const bool complex_coeff = ct.find_first_of("+-", 1) != std::string::npos;
        if (complex_coeff) ct = "(" + ct + ")";
        std::string term;
        if (i == 0) {
            term = ct;
        } else {
            if (ct == "1") term.clear();
            else if (ct == "-1") term = "-";
            else term = ct + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
    return os << p.to_string();
}

using UniPoly = Poly<Rational>;

/// Rational coefficient vector times a positive integer, content removed.
inline std::vector<Integer> primitive_integer_coeffs(const UniPoly& p) {
    Integer den = 1;
    for (const auto& c : p.coeffs()) den = integer_lcm(den, c.get_den());
    std::vector<Integer> out;
    Integer content = 0;
    for (const auto& c : p.coeffs()) {
        Integer v = c.get_num() * (den / c.get_den());
        content = integer_gcd(content, v);
        out.push_back(v);
    }
    if (content != 0)
        for (auto& v : out) v /= content;
    return out;
}

/// Factor of multiplicity `multiplicity` in a square-free decomposition.
struct SquarefreeFactor {
    UniPoly factor;
    unsigned multiplicity;
};

/// Yun's algorithm over Q. Factors are monic, square-free and pairwise coprime;
/// their product (with multiplicities) equals p up to the leading coefficient.
inline std::vector<SquarefreeFactor> squarefree_decompose(const UniPoly& p) {
    if (p.zero()) throw std::domain_error("square-free decomposition of the zero polynomial");
    std::vector<SquarefreeFactor> out;
    if (p.degree() == 0) return out;
    UniPoly f = p.monic();
    UniPoly df = f.derivative();
    UniPoly a = gcd(f, df);
    UniPoly b = f / a;
    UniPoly c = df / a;
    UniPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        UniPoly g = gcd(b, d);
        b = b / g;
        if (g.degree() > 0) out.push_back({g.monic(), i});
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

/// Product of the distinct irreducible factors of p (monic).
inline UniPoly squarefree_part(const UniPoly& p) {
    UniPoly out(Rational(1));
    for (const auto& f : squarefree_decompose(p)) out *= f.factor;
    return out;
}

}  // namespace puiseux
