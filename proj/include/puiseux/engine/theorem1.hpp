#pragma once

/**
 * @file theorem1.hpp
 * @brief Transformed equation G and the coefficient recursion for simple roots.
 *
 * With xi = t^s and y = t^r (c + u(t)), y' = t^{r-s} (lambda (c+u) + (t u')/s).
 * Dividing F by t^{s gamma} leaves
 *
 *     G(t, u, w) = sum_i a_i(x0 + t^s) t^{e_i} (c+u)^{p_i} (lambda (c+u) + w/s)^{q_i},   w = t du/dt,
 *
 * with every e_i >= 0 and G(0,0,0) = P(c) = 0. The order-t^k equation is
 * linear in c_k with factor L_k = G_u(0) + k G_w(0).
 */

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "puiseux/arith/roots.hpp"
#include "puiseux/model/series.hpp"
#include "puiseux/polygon/characteristic.hpp"

namespace puiseux {

/// Broken internal invariant (division check, zero recursion factor).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Theorem 1 requested for a multiple root.
class ExceptionalFamilyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// a(x) evaluated in the domain of `like`.
template <class T>
T eval_in(const UniPoly& a, const T& x, const T& like) {
    T acc = embed(Rational(0), like);
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) acc = acc * x + embed(*it, like);
    return acc;
}

namespace detail {

template <class T>
std::vector<T> mul_trunc(const std::vector<T>& a, const std::vector<T>& b, std::size_t deg, const T& zero) {
    std::vector<T> out(std::min(deg + 1, a.size() + b.size() ? a.size() + b.size() - 1 : 0), zero);
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) {
            if (is_zero(b[j])) continue;
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return out;
}

using UW = std::pair<unsigned, unsigned>;

/// (c+u)^p (lambda c + lambda u + w/s)^q as a polynomial in (u, w).
template <class T>
std::map<UW, T> edge_factor(const T& c, const Rational& lambda, long s, unsigned p, unsigned q, const T& like) {
    const T zero = embed(Rational(0), like);
    std::map<UW, T> acc{{UW{0, 0}, embed(Rational(1), like)}};
    auto times = [&](const std::map<UW, T>& lin) {
        std::map<UW, T> out;
        for (const auto& [ka, va] : acc)
            for (const auto& [kb, vb] : lin) {
                auto [it, fresh] = out.try_emplace(UW{ka.first + kb.first, ka.second + kb.second}, zero);
                it->second = it->second + va * vb;
            }
        acc = std::move(out);
    };
    const std::map<UW, T> y{{UW{0, 0}, c}, {UW{1, 0}, embed(Rational(1), like)}};
    const std::map<UW, T> dy{{UW{0, 0}, c * embed(lambda, like)},
                             {UW{1, 0}, embed(lambda, like)},
                             {UW{0, 1}, embed(make_rational(1, s), like)}};
    for (unsigned i = 0; i < p; ++i) times(y);
    for (unsigned i = 0; i < q; ++i) times(dy);
    return acc;
}

}  // namespace detail

template <class T>
struct TransformedEquation {
    Rational x0;
    long s = 1;
    long r = 0;
    Rational lambda;
    Rational gamma;
    long shift = 0;  ///< t-exponent s*gamma divided out of F(phi)
    T c;
    std::map<detail::UW, std::vector<T>> g;  ///< g_ij(t), G = sum g_ij u^i w^j
    T p_prime;                               ///< P'(c) = G_u(0)
    T d;                                     ///< s G_w(0) = sum alpha q lambda^{q-1} c^{M-1}

    /// L_k = G_u(0) + k G_w(0).
    [[nodiscard]] T linear_factor(long k) const {
        return p_prime + d * embed(make_rational(k, s), c);
    }

    [[nodiscard]] T g_at(detail::UW key, std::size_t deg) const {
        auto it = g.find(key);
        if (it == g.end() || deg >= it->second.size()) return embed(Rational(0), c);
        return it->second[deg];
    }

    /// [t^k] G(t, u, t u') for u = sum_{1<=j} u_j t^j (u_0 = 0).
    [[nodiscard]] T coefficient(const std::vector<T>& u, std::size_t k) const {
        const T zero = embed(Rational(0), c);
        std::vector<T> w(u.size(), zero);
        for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] * embed(Rational(static_cast<long>(j)), c);
        unsigned imax = 0, jmax = 0;
        for (const auto& [key, v] : g) {
            imax = std::max(imax, key.first);
            jmax = std::max(jmax, key.second);
        }
        std::vector<std::vector<T>> upow{{embed(Rational(1), c)}}, wpow{{embed(Rational(1), c)}};
        for (unsigned i = 1; i <= imax; ++i) upow.push_back(detail::mul_trunc(upow.back(), u, k, zero));
        for (unsigned j = 1; j <= jmax; ++j) wpow.push_back(detail::mul_trunc(wpow.back(), w, k, zero));
        T out = zero;
        for (const auto& [key, gij] : g) {
            const auto uw = detail::mul_trunc(upow[key.first], wpow[key.second], k, zero);
            for (std::size_t a = 0; a <= k && a < gij.size(); ++a) {
                const std::size_t b = k - a;
                if (b < uw.size() && !is_zero(gij[a]) && !is_zero(uw[b])) out = out + gij[a] * uw[b];
            }
        }
        return out;
    }
};

/// True when the Theorem 1 recursion is admissible at x0 for this polygon kind.
inline bool theorem1_admissible(const DiffPoly& f, const Rational& x0, PolygonKind kind) {
    if (!f.depends_on_dy()) return true;
    return kind == PolygonKind::Petrovic && !is_singular_point(f, x0);
}

/**
 * Builds G for the edge and root c. Exponent and P(c) = 0 checks raise
 * InvariantError; at nonsingular points s G_w(0) = P'(c) is checked too,
 * which is the statement L_k = P'(c)(1 + k/s).
 */
template <class T>
TransformedEquation<T> build_transformed(const DiffPoly& f, const Rational& x0, const PolygonEdge& edge, const T& c,
                                         PolygonKind kind = PolygonKind::Petrovic) {
    if (is_zero(edge.lambda)) throw std::invalid_argument("Theorem 1 needs an inclined edge");
    if (maybe_zero(c)) throw std::invalid_argument("leading coefficient must be a nonzero root of P");
    TransformedEquation<T> out;
    out.x0 = x0;
    out.s = edge.s();
    out.r = edge.r();
    out.lambda = edge.lambda;
    out.gamma = edge.gamma;
    out.c = c;
    const Rational shift = edge.gamma * out.s;
    if (!is_integer(shift)) throw InvariantError("s*gamma is not an integer");
    out.shift = to_long(shift.get_num());
    const T zero = embed(Rational(0), c);
    const long s = out.s;

    for (const auto& [key, a] : f.terms()) {
        const long M = static_cast<long>(key.p + key.q);
        // t-exponent of the monomial before division: r M - s q.
        const long e = out.r * M - s * static_cast<long>(key.q) - out.shift;
        const UniPoly shifted = a.taylor_shift(x0);
        const long v = shifted.valuation();
        if (e + s * v < 0) throw InvariantError("division check failed: negative t-exponent in the transformed equation");
        std::vector<T> at(static_cast<std::size_t>(e + s * shifted.degree() + 1), zero);
        for (std::size_t i = 0; i < shifted.coeffs().size(); ++i) {
            if (is_zero(shifted.coeffs()[i])) continue;
            at[static_cast<std::size_t>(e + s * static_cast<long>(i))] = embed(shifted.coeffs()[i], c);
        }
        for (const auto& [uw, coef] : detail::edge_factor(c, edge.lambda, s, key.p, key.q, zero)) {
            auto& slot = out.g[uw];
            if (slot.size() < at.size()) slot.resize(at.size(), zero);
            for (std::size_t i = 0; i < at.size(); ++i)
                if (!is_zero(at[i])) slot[i] = slot[i] + at[i] * coef;
        }
    }
    const T p0 = out.g_at({0, 0}, 0);
    if (!maybe_zero(p0)) throw InvariantError("division check failed: G(0,0,0) = P(c) is not zero");
    out.p_prime = out.g_at({1, 0}, 0);
    out.d = out.g_at({0, 1}, 0) * embed(Rational(s), c);
    if (kind == PolygonKind::Petrovic && !is_singular_point(f, x0)) {
        const T diff = out.d - out.p_prime;
        if (!maybe_zero(diff)) throw InvariantError("linear part differs from P'(c)(1 + k/s)");
    }
    return out;
}

/// Runs the recursion on a built G: c_k = -[t^k] G(t, u_{k-1}, w_{k-1}) / L_k.
template <class T>
TruncatedSeries<T> expand_transformed(const TransformedEquation<T>& g, long n_terms) {
    if (n_terms < 0) throw std::invalid_argument("number of terms must be nonnegative");
    TruncatedSeries<T> out;
    out.x0 = g.x0;
    out.s = g.s;
    out.r = g.r;
    out.coeffs.push_back(g.c);
    const T zero = embed(Rational(0), g.c);
    std::vector<T> u{zero};
    for (long k = 1; k <= n_terms; ++k) {
        const T lk = g.linear_factor(k);
        if (is_zero(lk)) throw InvariantError("recursion factor L_" + std::to_string(k) + " vanishes");
        if (maybe_zero(lk)) throw PrecisionExhausted("recursion factor not separated from zero; raise the precision");
        const T rhs = g.coefficient(u, static_cast<std::size_t>(k));
        const T ck = -(rhs / lk);
        u.push_back(ck);
        out.coeffs.push_back(ck);
    }
    return out;
}

template <class T>
TruncatedSeries<T> expand_theorem1(const DiffPoly& f, const Rational& x0, const PolygonEdge& edge, const T& c,
                                   long n_terms, PolygonKind kind = PolygonKind::Petrovic) {
    if (!theorem1_admissible(f, x0, kind))
        throw SingularPointError("Theorem 1 needs a nonsingular base point; x0 = " + to_string(x0) + " is singular");
    return expand_transformed(build_transformed(f, x0, edge, c, kind), n_terms);
}

/// One component of a number-field family after dynamic evaluation.
struct NumberFieldExpansion {
    UniPoly modulus;
    TruncatedSeries<NumberFieldElem> series;
};

/// Exact expansion over Q[c]/(m); splits the modulus whenever a zero divisor shows up.
inline std::vector<NumberFieldExpansion> expand_theorem1_nf(const DiffPoly& f, const Rational& x0,
                                                            const PolygonEdge& edge, const UniPoly& modulus,
                                                            long n_terms, PolygonKind kind = PolygonKind::Petrovic) {
    std::vector<NumberFieldExpansion> out;
    std::vector<UniPoly> pending{modulus.monic()};
    while (!pending.empty()) {
        UniPoly m = pending.back();
        pending.pop_back();
        auto mod = NumberFieldElem::make_modulus(m);
        try {
            auto series = expand_theorem1(f, x0, edge, NumberFieldElem::generator(mod), n_terms, kind);
            out.push_back({m, std::move(series)});
        } catch (const SplitRequired& split) {
            auto [a, b] = split_modulus(m, split.event.factor);
            pending.push_back(*a);
            pending.push_back(*b);
        }
    }
    return out;
}

/// Series of any coefficient domain produced for a family.
using AnySeries = std::variant<TruncatedSeries<Rational>, TruncatedSeries<NumberFieldElem>, TruncatedSeries<ComplexBall>>;

struct FamilySeries {
    std::optional<UniPoly> modulus;  ///< number-field component (exact, nonrational)
    AnySeries series;
};

/// Expands a non-exceptional family in its own domain.
inline std::vector<FamilySeries> expand_family(const DiffPoly& f, const Rational& x0, const SolutionFamily& family,
                                               long n_terms, PolygonKind kind = PolygonKind::Petrovic) {
    if (family.exceptional)
        throw ExceptionalFamilyError("family is exceptional (multiple root); Theorem 1 does not apply");
    std::vector<FamilySeries> out;
    if (family.kind == FamilyKind::Numeric) {
        out.push_back({std::nullopt, expand_theorem1(f, x0, family.edge, *family.root, n_terms, kind)});
    } else if (auto q = family.rational_root()) {
        out.push_back({std::nullopt, expand_theorem1(f, x0, family.edge, *q, n_terms, kind)});
    } else {
        for (auto& part : expand_theorem1_nf(f, x0, family.edge, family.modulus, n_terms, kind))
            out.push_back({part.modulus, std::move(part.series)});
    }
    return out;
}

/// Number-field series evaluated at a certified root of its modulus.
inline TruncatedSeries<ComplexBall> evaluate_at_root(const TruncatedSeries<NumberFieldElem>& s, const ComplexBall& root) {
    TruncatedSeries<ComplexBall> out;
    out.x0 = s.x0;
    out.s = s.s;
    out.r = s.r;
    for (const auto& c : s.coeffs) out.coeffs.push_back(eval_ball(c.rep(), root));
    return out;
}

}  // namespace puiseux
