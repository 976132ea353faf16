#pragma once

// Independent reference computations used to freeze expected values.
// Nothing here shares code with the engine beyond Rational and UniPoly.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "puiseux/arith/number_field.hpp"
#include "puiseux/arith/poly.hpp"
#include "puiseux/model/diff_poly.hpp"

namespace oracle {

using puiseux::Rational;
using puiseux::UniPoly;
using Sparse = std::map<Rational, Rational>;  // exponent of xi -> coefficient

inline void add(Sparse& acc, const Rational& e, const Rational& c) {
    Rational v = acc[e] + c;
    if (v == 0) acc.erase(e);
    else acc[e] = v;
}

inline Sparse mul(const Sparse& a, const Sparse& b) {
    Sparse out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) add(out, ea + eb, ca * cb);
    return out;
}

inline Sparse deriv(const Sparse& a) {
    Sparse out;
    for (const auto& [e, c] : a)
        if (e != 0) add(out, e - 1, c * e);
    return out;
}

/// a(x0 + xi) expanded by the binomial theorem, term by term.
inline Sparse shifted_coefficient(const UniPoly& a, const Rational& x0) {
    Sparse out;
    for (std::size_t n = 0; n < a.coeffs().size(); ++n) {
        Rational binom = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k > 0) binom = binom * Rational(static_cast<long>(n - k + 1)) / Rational(static_cast<long>(k));
            Rational x0pow = 1;
            for (std::size_t i = 0; i < n - k; ++i) x0pow *= x0;
            add(out, Rational(static_cast<long>(k)), a.coeffs()[n] * binom * x0pow);
        }
    }
    return out;
}

/// F(x0 + xi, phi, dphi/dxi) with no truncation.
inline Sparse residual(const puiseux::DiffPoly& f, const Sparse& phi, const Rational& x0) {
    const Sparse dphi = deriv(phi);
    Sparse out;
    for (const auto& [k, a] : f.terms()) {
        Sparse term = shifted_coefficient(a, x0);
        for (unsigned i = 0; i < k.p; ++i) term = mul(term, phi);
        for (unsigned i = 0; i < k.q; ++i) term = mul(term, dphi);
        for (const auto& [e, c] : term) add(out, e, c);
    }
    return out;
}

inline std::optional<Rational> order(const Sparse& s) {
    if (s.empty()) return std::nullopt;
    return s.begin()->first;
}


// ---------------------------------------------------------------------------
// Undetermined coefficients over any exact domain T (Rational or a number
// field), by plain full expansion and a secant solve for each new unknown.

template <class T>
struct Dense {
    long lo = 0;
    std::vector<T> c;
};

template <class T>
Dense<T> dense_mul(const Dense<T>& a, const Dense<T>& b, const T& zero) {
    Dense<T> out{a.lo + b.lo, {}};
    if (a.c.empty() || b.c.empty()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, zero);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
    return out;
}

template <class T>
void dense_add_into(std::map<long, T>& acc, const Dense<T>& a) {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        auto [it, fresh] = acc.try_emplace(a.lo + static_cast<long>(i), a.c[i]);
        if (!fresh) it->second = it->second + a.c[i];
    }
}

/// F(x0 + t^s, phi(t), dphi/dxi) for phi = sum_k c_k t^{r+k}; map t-exponent -> coefficient.
template <class T>
std::map<long, T> full_residual_t(const puiseux::DiffPoly& f, const Rational& x0, long s, long r,
                                  const std::vector<T>& coeffs, const std::function<T(const Rational&)>& lift) {
    const T zero = lift(Rational(0));
    Dense<T> phi{r, coeffs};
    Dense<T> dphi{r - s, {}};
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        dphi.c.push_back(coeffs[k] * lift(puiseux::make_rational(r + static_cast<long>(k), s)));
    std::map<long, T> acc;
    for (const auto& [key, a] : f.terms()) {
        Sparse sh = shifted_coefficient(a, x0);
        Dense<T> term{0, {}};
        long top = sh.empty() ? 0 : puiseux::to_long(sh.rbegin()->first.get_num());
        term.c.assign(static_cast<std::size_t>(top * s + 1), zero);
        for (const auto& [e, v] : sh) term.c[static_cast<std::size_t>(puiseux::to_long(e.get_num()) * s)] = lift(v);
        for (unsigned i = 0; i < key.p; ++i) term = dense_mul(term, phi, zero);
        for (unsigned i = 0; i < key.q; ++i) term = dense_mul(term, dphi, zero);
        dense_add_into(acc, term);
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (puiseux::is_zero(it->second)) it = acc.erase(it);
        else ++it;
    }
    return acc;
}

/// c_1..c_n after c_0 = c at t-exponent r, solved one at a time.
template <class T>
std::vector<T> undetermined_coefficients(const puiseux::DiffPoly& f, const Rational& x0, long s, long r, const T& c,
                                         long n, const std::function<T(const Rational&)>& lift) {
    std::vector<T> coeffs{c};
    auto value_at = [&](const std::map<long, T>& m, long e) {
        auto it = m.find(e);
        return it == m.end() ? lift(Rational(0)) : it->second;
    };
    for (long k = 1; k <= n; ++k) {
        auto with = [&](long z) {
            auto trial = coeffs;
            trial.push_back(lift(Rational(z)));
            return full_residual_t(f, x0, s, r, trial, lift);
        };
        auto r0 = with(0), r1 = with(1), r2 = with(2);
        // Lowest order where the unknown enters.
        long m = std::numeric_limits<long>::max();
        for (const auto& [e, v] : r1)
            if (!puiseux::is_zero(v - value_at(r0, e))) { m = e; break; }
        for (const auto& [e, v] : r0)
            if (!puiseux::is_zero(v - value_at(r1, e))) { m = std::min(m, e); break; }
        if (m == std::numeric_limits<long>::max()) throw std::runtime_error("oracle: unknown does not enter");
        for (const auto& [e, v] : r0)
            if (e < m) throw std::runtime_error("oracle: residual below the solving order");
        const T slope = value_at(r1, m) - value_at(r0, m);
        if (!puiseux::is_zero(value_at(r2, m) - value_at(r0, m) - slope - slope))
            throw std::runtime_error("oracle: solving order is not affine in the unknown");
        coeffs.push_back(-(value_at(r0, m) / slope));
    }
    return coeffs;
}

// ---------------------------------------------------------------------------
// Algebraic curves F(x, y) = 0: Newton iteration for v in
// H(t, v) = t^{-m} F(x0 + t^s, t^r (c + v)) with m the least t-exponent.

using Series = std::vector<Rational>;  // power series in t, index = exponent

inline Series s_mul(const Series& a, const Series& b, std::size_t n) {
    Series out(n, Rational(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline Series s_inv(const Series& a, std::size_t n) {
    if (a.empty() || a[0] == 0) throw std::runtime_error("oracle: series not invertible");
    Series out(n, Rational(0));
    out[0] = 1 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * out[k - j];
        out[k] = -acc / a[0];
    }
    return out;
}

/// Coefficients c, c_1, ..., c_{n-1} of y = t^r (c + v(t)), xi = t^s.
inline Series newton_puiseux(const puiseux::DiffPoly& f, const Rational& x0, long s, long r, const Rational& c,
                             std::size_t n) {
    if (f.depends_on_dy()) throw std::invalid_argument("oracle: algebraic equations only");
    // H as polynomial in v with Laurent coefficients in t: sum_p a_p(x0 + t^s) t^{r p} (c + v)^p.
    std::map<unsigned, std::map<long, Rational>> h;  // v-power -> (t-exponent -> coeff)
    for (const auto& [key, a] : f.terms()) {
        Sparse sh = shifted_coefficient(a, x0);
        // (c + v)^p by the binomial theorem.
        Rational binom = 1;
        for (unsigned j = 0; j <= key.p; ++j) {
            if (j > 0) binom = binom * Rational(key.p - j + 1) / Rational(j);
            Rational cp = 1;
            for (unsigned i = 0; i < key.p - j; ++i) cp *= c;
            for (const auto& [e, v] : sh) {
                const long te = puiseux::to_long(e.get_num()) * s + r * static_cast<long>(key.p);
                h[j][te] += v * binom * cp;
            }
        }
    }
    long m = std::numeric_limits<long>::max();
    for (const auto& [j, row] : h)
        for (const auto& [e, v] : row)
            if (v != 0) m = std::min(m, e);
    auto row_series = [&](unsigned j) {
        Series out(n + 1, Rational(0));
        for (const auto& [e, v] : h[j]) {
            const long idx = e - m;
            if (idx < 0) throw std::runtime_error("oracle: negative exponent after normalisation");
            if (static_cast<std::size_t>(idx) <= n) out[static_cast<std::size_t>(idx)] += v;
        }
        return out;
    };
    unsigned pmax = 0;
    for (const auto& [j, row] : h) pmax = std::max(pmax, j);
    std::vector<Series> rows;
    for (unsigned j = 0; j <= pmax; ++j) rows.push_back(row_series(j));
    const std::size_t len = n + 1;
    Series v(len, Rational(0));
    for (int iter = 0; (std::size_t{1} << iter) <= 2 * len; ++iter) {
        // H(v) and H_v(v) by Horner in v.
        Series hv(len, Rational(0)), dv(len, Rational(0));
        for (unsigned j = pmax + 1; j-- > 0;) {
            dv = s_mul(dv, v, len);
            for (std::size_t i = 0; i < len; ++i) dv[i] += hv[i];
            hv = s_mul(hv, v, len);
            for (std::size_t i = 0; i < len; ++i) hv[i] += rows[j][i];
        }
        Series step = s_mul(hv, s_inv(dv, len), len);
        for (std::size_t i = 0; i < len; ++i) v[i] -= step[i];
    }
    Series out(n, Rational(0));
    out[0] = c;
    for (std::size_t i = 1; i < n; ++i) out[i] = v[i];
    return out;
}

}  // namespace oracle
