#pragma once

/**
 * @file resultant.hpp
 * @brief Resultants over an integral domain D (Rational, Q[x], Q[x][y], ...).
 *
 * Two independent routes are provided: the Sylvester determinant evaluated by
 * fraction-free Bareiss elimination, and the subresultant pseudo-remainder
 * sequence. Both use the convention Res(f, g) = det Sylvester(f, g), so that
 * Res(z - a, z - b) = a - b.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "puiseux/arith/poly.hpp"

namespace puiseux {

namespace detail {

template <class D>
D power(const D& base, long e) {
    D out(1);
    for (long i = 0; i < e; ++i) out = out * base;
    return out;
}

}  // namespace detail

/// det of the (m+n)x(m+n) Sylvester matrix via Bareiss elimination.
template <class D>
D sylvester_resultant(const Poly<D>& f, const Poly<D>& g) {
    if (f.zero() || g.zero()) return D(0);
    const long m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return D(1);
    if (m == 0) return detail::power(f.lc(), n);
    if (n == 0) return detail::power(g.lc(), m);
    const auto size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<D>> a(size, std::vector<D>(size, D(0)));
    for (long row = 0; row < n; ++row)
        for (long j = 0; j <= m; ++j)
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] = f.coeff(static_cast<std::size_t>(m - j));
    for (long row = 0; row < m; ++row)
        for (long j = 0; j <= n; ++j)
            a[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + j)] = g.coeff(static_cast<std::size_t>(n - j));

    bool negate = false;
    D prev(1);
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (is_zero(a[k][k])) {
            std::size_t pivot = k + 1;
            while (pivot < size && is_zero(a[pivot][k])) ++pivot;
            if (pivot == size) return D(0);
            std::swap(a[k], a[pivot]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j)
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            a[i][k] = D(0);
        }
        prev = a[k][k];
    }
    D det = a[size - 1][size - 1];
    return negate ? -det : det;
}

/// Subresultant PRS (Collins/Brown, as in Cohen's Algorithm 3.3.7 without content removal).
template <class D>
D subresultant_resultant(Poly<D> a, Poly<D> b) {
    if (a.zero() || b.zero()) return D(0);
    int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -1;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        D out = detail::power(b.lc(), a.degree());
        return sign < 0 ? -out : out;
    }
    D g(1), h(1);
    while (true) {
        const long delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        Poly<D> r = a.pseudo_rem(b);
        a = std::move(b);
        if (r.zero()) return D(0);
        const D divisor = g * detail::power(h, delta);
        std::vector<D> reduced;
        reduced.reserve(r.coeffs().size());
        for (const auto& c : r.coeffs()) reduced.push_back(exact_div(c, divisor));
        b = Poly<D>(std::move(reduced));
        g = a.lc();
        // h <- g^delta / h^(delta - 1)
        h = exact_div(detail::power(g, delta), detail::power(h, delta - 1));
        if (b.degree() == 0) break;
    }
    const long da = a.degree();
    D out = exact_div(detail::power(b.lc(), da), detail::power(h, da - 1));
    return sign < 0 ? -out : out;
}

/// Sylvester determinant for small degrees, subresultant PRS beyond degree 4.
template <class D>
D resultant(const Poly<D>& f, const Poly<D>& g) {
    if (std::max(f.degree(), g.degree()) > 4) return subresultant_resultant(f, g);
    return sylvester_resultant(f, g);
}

}  // namespace puiseux
