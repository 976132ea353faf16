#pragma once

/**
 * @file roots.hpp
 * @brief Rational roots by candidate testing, certified complex root balls.
 *
 * numeric_roots runs Aberth's simultaneous iteration on each square-free
 * factor and certifies the result with Weierstrass inclusion disks: for
 * approximations z_1..z_n of a degree-n polynomial f, the disks
 * |z - z_i| <= n |f(z_i) / (lc(f) prod_{j!=i} (z_i - z_j))| cover all roots, and
 * when they are pairwise disjoint each one holds exactly one root.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <complex>
#include <utility>
#include <vector>

#include "puiseux/arith/ball.hpp"
#include "puiseux/arith/poly.hpp"

namespace puiseux {

struct RootBall {
    ComplexBall ball;
    unsigned multiplicity;
};

namespace detail {

/// Prime factorization by trial division; nullopt if a composite cofactor above bound^2 remains.
inline std::optional<std::vector<std::pair<Integer, unsigned>>> factor_small(Integer n, unsigned long bound = 100000) {
    std::vector<std::pair<Integer, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (unsigned long p = 2; p <= bound && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(Integer(p), e);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 && n > Integer(bound) * bound) return std::nullopt;
        out.emplace_back(n, 1);
    }
    return out;
}

inline std::vector<Integer> divisors(const std::vector<std::pair<Integer, unsigned>>& fac) {
    std::vector<Integer> out{Integer(1)};
    for (const auto& [p, e] : fac) {
        const std::size_t base = out.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

inline ComplexBall eval_mid(const std::vector<ComplexBall>& coeffs, const ComplexBall& z) {
    ComplexBall acc(0L);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * z + *it).midpoint();
    return acc;
}

/// Aberth iteration in double precision; a cheap starting point for the multiprecision phase.
inline std::vector<std::complex<double>> aberth_double(const UniPoly& f) {
    using C = std::complex<double>;
    const long n = f.degree();
    std::vector<C> fc, dfc;
    bool finite = true;
    for (const auto& c : f.coeffs()) {
        fc.emplace_back(c.get_d(), 0.0);
        finite = finite && std::isfinite(fc.back().real());
    }
    for (std::size_t i = 1; i < fc.size(); ++i) dfc.push_back(fc[i] * static_cast<double>(i));

    // Start on a circle of radius (|a0|/|an|)^(1/n), perturbed off symmetry axes.
    double a0 = std::abs(f.coeff(0).get_d()), an = std::abs(f.lc().get_d());
    double radius = (a0 > 0 && an > 0) ? std::pow(a0 / an, 1.0 / static_cast<double>(n)) : 1.0;
    if (!std::isfinite(radius) || radius <= 0) radius = 1.0;
    std::vector<C> z;
    for (long k = 0; k < n; ++k)
        z.push_back(std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.7));
    if (!finite) return z;

    auto horner = [](const std::vector<C>& c, C x) {
        C acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    for (int iter = 0; iter < 400; ++iter) {
        bool done = true;
        for (long i = 0; i < n; ++i) {
            C& zi = z[static_cast<std::size_t>(i)];
            const C fv = horner(fc, zi), dv = horner(dfc, zi);
            if (fv == C(0)) continue;
            C sum = 0;
            for (long j = 0; j < n; ++j)
                if (j != i && zi != z[static_cast<std::size_t>(j)]) sum += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
            const C ratio = fv / dv;
            const C w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            zi -= w;
            if (std::abs(w) > 1e-13 * std::max(1.0, std::abs(zi))) done = false;
        }
        if (done) break;
    }
    return z;
}

/// Certified isolating balls for the roots of a square-free f with deg >= 2.
inline std::vector<ComplexBall> isolate_squarefree(const UniPoly& f, unsigned precision_bits) {
    const long n = f.degree();
    const UniPoly df = f.derivative();
    std::vector<ComplexBall> z;
    for (const auto& w : aberth_double(f)) z.emplace_back(Real::from_double(w.real(), 64), Real::from_double(w.imag(), 64), Real(64));

    mpfr_prec_t wp = precision_bits + 32;
    for (int attempt = 0; attempt < 4; ++attempt, wp *= 2) {
        std::vector<ComplexBall> fc, dfc;
        for (const auto& c : f.coeffs()) fc.emplace_back(c, wp);
        for (const auto& c : df.coeffs()) dfc.emplace_back(c, wp);
        for (auto& zi : z) zi = zi.with_precision(wp).midpoint();

        const Real tol = Real::pow2(-static_cast<long>(wp) + 12);
        // Ill-conditioned roots never reach tol; stop once updates are far below the
        // certification target and no longer shrinking.
        const Real loose = Real::pow2(-static_cast<long>(precision_bits) / 2 - 32);
        Real prev_max = Real::from_double(1e300);
        for (int iter = 0; iter < 500; ++iter) {
            bool done = true;
            Real max_step(64);
            for (long i = 0; i < n; ++i) {
                auto& zi = z[static_cast<std::size_t>(i)];
                ComplexBall fv = eval_mid(fc, zi);
                if (fv.exact_zero()) continue;
                ComplexBall dv = eval_mid(dfc, zi);
                ComplexBall sum(0L);
                for (long j = 0; j < n; ++j) {
                    if (j == i) continue;
                    ComplexBall d = (zi - z[static_cast<std::size_t>(j)]).midpoint();
                    if (d.exact_zero()) d = ComplexBall(Real::pow2(-static_cast<long>(wp) / 2), Real(64), Real(64));
                    sum = (sum + d.midpoint().inverse().midpoint()).midpoint();
                }
                ComplexBall w(0L);
                try {
                    ComplexBall ratio = (fv * dv.inverse()).midpoint();
                    w = (ratio * (ComplexBall(1L) - ratio * sum).midpoint().inverse()).midpoint();
                } catch (const PrecisionExhausted&) {
                    w = ComplexBall(Real::pow2(-20), Real::pow2(-21), Real(64));
                }
                zi = (zi - w).midpoint();
                Real scale = real::max(Real::from_double(1.0), zi.mid_abs_upper());
                const Real rel = real::div(w.mid_abs_upper(), scale, 64, MPFR_RNDU);
                max_step = real::max(max_step, rel);
                if (real::cmp(rel, tol) > 0) done = false;
            }
            if (done) break;
            if (real::cmp(max_step, loose) < 0 && real::cmp(real::mul(max_step, Real::from_double(2.0), 64, MPFR_RNDU), prev_max) >= 0)
                break;
            prev_max = max_step;
        }

        // Weierstrass inclusion radii in rigorous ball arithmetic.
        std::vector<Real> radii;
        const ComplexBall lc(f.lc(), wp);
        bool ok = true;
        for (long i = 0; i < n && ok; ++i) {
            const ComplexBall& zi = z[static_cast<std::size_t>(i)];
            ComplexBall denom = lc;
            for (long j = 0; j < n; ++j)
                if (j != i) denom = denom * (zi - z[static_cast<std::size_t>(j)]);
            try {
                ComplexBall w = eval_ball(f, zi) / denom;
                radii.push_back(real::mul(w.abs_upper(), Real::from_double(static_cast<double>(n)), 64, MPFR_RNDU));
            } catch (const PrecisionExhausted&) {
                ok = false;
            }
        }
        const Real target = Real::pow2(-static_cast<long>(precision_bits) / 2);
        for (std::size_t i = 0; ok && i < radii.size(); ++i) {
            if (real::cmp(radii[i], target) >= 0) ok = false;
            for (std::size_t j = i + 1; ok && j < radii.size(); ++j) {
                ComplexBall gap = z[i] - z[j];
                if (real::cmp(gap.abs_lower(), real::add(radii[i], radii[j], 64, MPFR_RNDU)) <= 0) ok = false;
            }
        }
        if (ok) {
            std::vector<ComplexBall> out;
            for (std::size_t i = 0; i < z.size(); ++i)
                out.push_back(z[i].inflated(radii[i]).with_precision(static_cast<mpfr_prec_t>(precision_bits)));
            return out;
        }
    }
    throw PrecisionExhausted("root isolation failed at " + std::to_string(precision_bits) +
                             " bits; retry with a higher --precision");
}

}  // namespace detail

/// One certified ball per distinct root, with multiplicities from the square-free structure.
inline std::vector<RootBall> numeric_roots(const UniPoly& p, unsigned precision_bits = 256) {
    if (p.zero()) throw std::domain_error("numeric roots of the zero polynomial");
    if (precision_bits < 64) throw std::invalid_argument("precision_bits must be at least 64");
    std::vector<RootBall> out;
    for (const auto& [factor, mult] : squarefree_decompose(p)) {
        UniPoly f = factor;
        if (is_zero(f.coeff(0))) {
            out.push_back({ComplexBall(Rational(0), precision_bits), mult});
            f = f / UniPoly::variable();
        }
        if (f.degree() == 1) {
            out.push_back({ComplexBall(-f.coeff(0) / f.coeff(1), precision_bits), mult});
        } else if (f.degree() > 1) {
            for (auto& b : detail::isolate_squarefree(f, precision_bits)) out.push_back({std::move(b), mult});
        }
    }
    return out;
}

/// All rational zeros of p, by testing divisors of the extreme coefficients.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
    if (p.zero()) throw std::domain_error("rational roots of the zero polynomial");
    std::set<Rational> found;
    UniPoly q = p;
    if (q.valuation() > 0) {
        found.insert(Rational(0));
        q = q / UniPoly::monomial(Rational(1), static_cast<std::size_t>(q.valuation()));
    }
    if (q.degree() < 1) return {found.begin(), found.end()};
    const auto ints = primitive_integer_coeffs(q);
    const Integer& a0 = ints.front();
    const Integer& an = ints.back();

    auto f0 = detail::factor_small(a0);
    auto fn = detail::factor_small(an);
    if (f0 && fn) {
        const auto num = detail::divisors(*f0);
        const auto den = detail::divisors(*fn);
        if (num.size() * den.size() <= 200000) {
            // A root a/b of an integer polynomial has (b - a) | q(1) and (b + a) | q(-1).
            Integer at_one = 0, at_minus_one = 0;
            for (std::size_t i = 0; i < ints.size(); ++i) {
                at_one += ints[i];
                at_minus_one += (i % 2 ? -ints[i] : ints[i]);
            }
            auto divides = [](const Integer& d, const Integer& n) { return n == 0 || (d != 0 && n % d == 0); };
            for (const auto& a : num)
                for (const auto& b : den)
                    for (int sgn : {1, -1}) {
                        const Integer sa = a * sgn;
                        if (!divides(b - sa, at_one) || !divides(b + sa, at_minus_one)) continue;
                        Rational cand = make_rational(sa, b);
                        if (is_zero(q(cand))) found.insert(cand);
                    }
            return {found.begin(), found.end()};
        }
    }
    // Fallback for hard-to-factor extremes: a root a/b has b | an, so an*root is an integer.
    const unsigned bits = 128 + 2 * static_cast<unsigned>(mpz_sizeinbase(an.get_mpz_t(), 2)) +
                          2 * static_cast<unsigned>(mpz_sizeinbase(a0.get_mpz_t(), 2));
    for (const auto& rb : numeric_roots(squarefree_part(q), bits)) {
        if (!ComplexBall(rb.ball.mid_re(), Real(64), rb.ball.rad()).overlaps(rb.ball)) continue;
        Rational scaled = rb.ball.mid_re().to_rational() * Rational(an);
        Integer nearest = floor(scaled + Rational(1, 2));
        Rational cand = make_rational(nearest, an);
        if (is_zero(q(cand))) found.insert(cand);
    }
    return {found.begin(), found.end()};
}

}  // namespace puiseux
