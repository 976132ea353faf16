#pragma once

/**
 * @file number_field.hpp
 * @brief Arithmetic in Q[c]/(m) by dynamic evaluation.
 *
 * The modulus m is monic and square-free but need not be irreducible, so the
 * quotient is a product of fields. Inversion of a zero divisor exposes a
 * proper factor of m (a SplitEvent) instead of failing; callers then continue
 * separately modulo each factor. Elements without a modulus are plain
 * rational scalars and adopt the modulus of the other operand.
 */

#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "puiseux/arith/poly.hpp"

namespace puiseux {

/// A proper nonconstant factor of a modulus discovered by a failed inversion.
struct SplitEvent {
    UniPoly factor;  ///< monic, 0 < deg < deg modulus
};

/// Exception form of SplitEvent raised by operator/.
class SplitRequired : public std::runtime_error {
public:
    explicit SplitRequired(SplitEvent ev)
        : std::runtime_error("zero divisor in number-field arithmetic; modulus splits"), event(std::move(ev)) {}
    SplitEvent event;
};

class NumberFieldElem {
public:
    using Modulus = std::shared_ptr<const UniPoly>;

    NumberFieldElem() = default;
    NumberFieldElem(int v) : rep_(Rational(v)) {}   // NOLINT(google-explicit-constructor)
    NumberFieldElem(long v) : rep_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    NumberFieldElem(const Rational& v) : rep_(v) {}  // NOLINT(google-explicit-constructor)
    NumberFieldElem(Modulus m, UniPoly rep) : modulus_(std::move(m)), rep_(std::move(rep)) { reduce(); }

    /// Validates and wraps a modulus (monic, square-free, degree >= 1).
    static Modulus make_modulus(const UniPoly& m) {
        if (m.degree() < 1) throw std::invalid_argument("number-field modulus must be nonconstant");
        UniPoly mm = m.monic();
        if (gcd(mm, mm.derivative()).degree() > 0)
            throw std::invalid_argument("number-field modulus must be square-free");
        return std::make_shared<const UniPoly>(std::move(mm));
    }

    /// The class of c in Q[c]/(m).
    static NumberFieldElem generator(const Modulus& m) { return {m, UniPoly::variable()}; }

    [[nodiscard]] const Modulus& modulus() const { return modulus_; }
    [[nodiscard]] const UniPoly& rep() const { return rep_; }
    [[nodiscard]] bool zero() const { return rep_.zero(); }

    /// Same element reduced modulo a factor of the modulus.
    [[nodiscard]] NumberFieldElem reduced_to(const Modulus& factor) const { return {factor, rep_}; }

    friend NumberFieldElem operator+(const NumberFieldElem& a, const NumberFieldElem& b) {
        return {common(a, b), a.rep_ + b.rep_};
    }
    friend NumberFieldElem operator-(const NumberFieldElem& a, const NumberFieldElem& b) {
        return {common(a, b), a.rep_ - b.rep_};
    }
    friend NumberFieldElem operator-(const NumberFieldElem& a) { return {a.modulus_, -a.rep_}; }
    friend NumberFieldElem operator*(const NumberFieldElem& a, const NumberFieldElem& b) {
        return {common(a, b), a.rep_ * b.rep_};
    }
    friend NumberFieldElem operator/(const NumberFieldElem& a, const NumberFieldElem& b);

    NumberFieldElem& operator+=(const NumberFieldElem& o) { return *this = *this + o; }
    NumberFieldElem& operator-=(const NumberFieldElem& o) { return *this = *this - o; }
    NumberFieldElem& operator*=(const NumberFieldElem& o) { return *this = *this * o; }

    friend bool operator==(const NumberFieldElem& a, const NumberFieldElem& b) {
        if (a.modulus_ && b.modulus_ && a.modulus_ != b.modulus_ && *a.modulus_ != *b.modulus_) return false;
        return a.rep_ == b.rep_;
    }

    /// The modulus shared by a and b (scalars adopt the other's).
    static Modulus common(const NumberFieldElem& a, const NumberFieldElem& b) {
        if (!a.modulus_) return b.modulus_;
        if (!b.modulus_ || a.modulus_ == b.modulus_ || *a.modulus_ == *b.modulus_) return a.modulus_;
        throw std::invalid_argument("number-field elements with different moduli");
    }

private:
    void reduce() {
        if (modulus_ && rep_.degree() >= modulus_->degree()) rep_ = rep_ % *modulus_;
    }

    Modulus modulus_;
    UniPoly rep_;
};

inline bool is_zero(const NumberFieldElem& a) { return a.zero(); }
inline bool maybe_zero(const NumberFieldElem& a) { return a.zero(); }

/// Inverse by extended Euclid, or the exposed factor gcd(rep, modulus).
inline std::variant<NumberFieldElem, SplitEvent> invert_mod(const NumberFieldElem& a) {
    if (a.zero()) throw std::domain_error("inverse of zero in number field");
    if (!a.modulus()) return NumberFieldElem(Rational(1) / a.rep().lc());
    auto [g, u, v] = extended_gcd(a.rep(), *a.modulus());
    if (g.degree() > 0) return SplitEvent{g};
    return NumberFieldElem(a.modulus(), u);
}

inline NumberFieldElem operator/(const NumberFieldElem& a, const NumberFieldElem& b) {
    if (!b.modulus() && !b.zero()) return {a.modulus(), a.rep().scaled(Rational(1) / b.rep().lc())};
    auto inv = invert_mod(NumberFieldElem(NumberFieldElem::common(a, b), b.rep()));
    if (auto* split = std::get_if<SplitEvent>(&inv)) throw SplitRequired(std::move(*split));
    return a * std::get<NumberFieldElem>(inv);
}

inline std::ostream& operator<<(std::ostream& os, const NumberFieldElem& a) { return os << a.rep().to_string("c"); }

/// Splits `m` along a discovered factor into the two coprime moduli d, m/d.
inline std::pair<NumberFieldElem::Modulus, NumberFieldElem::Modulus> split_modulus(const UniPoly& m,
                                                                                   const UniPoly& factor) {
    UniPoly other = (m / factor).monic();
    return {NumberFieldElem::make_modulus(factor.monic()), NumberFieldElem::make_modulus(other)};
}

/// Per-component gcd over Q[c]/(m) for polynomials with number-field coefficients.
struct ComponentGcd {
    NumberFieldElem::Modulus modulus;
    Poly<NumberFieldElem> gcd;
};

namespace detail {

inline Poly<NumberFieldElem> reduce_poly(const Poly<NumberFieldElem>& p, const NumberFieldElem::Modulus& m) {
    std::vector<NumberFieldElem> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c.reduced_to(m));
    return Poly<NumberFieldElem>(std::move(cs));
}

}  // namespace detail

/// gcd(a, b) evaluated dynamically: one entry per component of the modulus
/// on which the Euclidean algorithm ran without meeting a zero divisor.
inline std::vector<ComponentGcd> dynamic_gcd(const Poly<NumberFieldElem>& a, const Poly<NumberFieldElem>& b,
                                             const NumberFieldElem::Modulus& m) {
    std::vector<ComponentGcd> out;
    std::vector<NumberFieldElem::Modulus> pending{m};
    while (!pending.empty()) {
        NumberFieldElem::Modulus cur = pending.back();
        pending.pop_back();
        try {
            out.push_back({cur, gcd(detail::reduce_poly(a, cur), detail::reduce_poly(b, cur))});
        } catch (const SplitRequired& split) {
            auto [left, right] = split_modulus(*cur, split.event.factor);
            pending.push_back(left);
            pending.push_back(right);
        }
    }
    return out;
}

}  // namespace puiseux
