#pragma once

/**
 * @file characteristic.hpp
 * @brief Characteristic polynomials of inclined edges and their root families.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith/ball.hpp"
#include "puiseux/arith/roots.hpp"
#include "puiseux/polygon/polygon.hpp"

namespace puiseux {

/// Raised when the characteristic polynomial is requested at a singular point without override.
class SingularPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CharacteristicPoly {
    UniPoly poly;                 ///< P(c) at x0 (empty when collapsed)
    Poly<UniPoly> symbolic;       ///< same sum with a_i kept as polynomials in x0 (Petrovic kind)
    bool collapsed = false;       ///< fewer than two edge monomials survive at x0
    std::string note;
};

/// Lowest Taylor coefficient of a at x0 (a(x0) itself when nonzero).
inline Rational leading_taylor_coeff(const UniPoly& a, const Rational& x0) {
    UniPoly shifted = a.taylor_shift(x0);
    const long v = shifted.valuation();
    return v < 0 ? Rational(0) : shifted.coeff(static_cast<std::size_t>(v));
}

/// Per-member coefficient of c^M in P: a(x0) lambda^N (Petrovic) or alpha lambda^q (local).
inline Rational edge_coefficient(const SupportPoint& pt, const PolygonEdge& edge, const DiffPoly& f,
                                 const Rational& x0, PolygonKind kind) {
    const UniPoly a = f.coeff(pt.key.p, pt.key.q);
    const Rational lp = pow(edge.lambda, pt.key.q);
    if (kind == PolygonKind::Petrovic) return a(x0) * lp;
    return leading_taylor_coeff(a, x0) * lp;
}

/// P_{x0,lambda}(c) = sum over the edge of a_i(x0) lambda^{N_i} c^{M_i}.
inline CharacteristicPoly characteristic_poly(const PolygonEdge& edge, const DiffPoly& f, const Rational& x0,
                                              PolygonKind kind = PolygonKind::Petrovic, bool allow_singular = false) {
    if (kind == PolygonKind::Petrovic && !allow_singular && is_singular_point(f, x0))
        throw SingularPointError("x0 = " + to_string(x0) + " is a singular point of the equation");
    CharacteristicPoly out;
    std::vector<UniPoly> sym;
    int surviving = 0;
    for (const auto& pt : edge.members) {
        const Rational c = edge_coefficient(pt, edge, f, x0, kind);
        if (!is_zero(c)) ++surviving;
        out.poly += UniPoly::monomial(c, static_cast<std::size_t>(pt.M));
        if (sym.size() <= static_cast<std::size_t>(pt.M)) sym.resize(static_cast<std::size_t>(pt.M) + 1);
        sym[static_cast<std::size_t>(pt.M)] += f.coeff(pt.key.p, pt.key.q).scaled(pow(edge.lambda, pt.key.q));
    }
    out.symbolic = Poly<UniPoly>(std::move(sym));
    if (surviving < 2) {
        out.collapsed = true;
        out.note = "polygon collapses at x0: fewer than two edge monomials survive";
        out.poly = UniPoly();
    }
    return out;
}

/// "c^3 - x0^8" style rendering of the symbolic form.
inline std::string symbolic_to_string(const Poly<UniPoly>& p) {
    if (p.zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const UniPoly& a = p.coeffs()[static_cast<std::size_t>(i)];
        if (a.zero()) continue;
        std::string coef = a.to_string("x0");
        const bool single = std::count_if(a.coeffs().begin(), a.coeffs().end(),
                                          [](const Rational& c) { return !is_zero(c); }) == 1;
        bool negative = false;
        if (single && coef[0] == '-') {
            negative = true;
            coef.erase(0, 1);
        } else if (!single) {
            coef = "(" + coef + ")";
        }
        std::string mono = i == 0 ? "" : (i == 1 ? "c" : "c^" + std::to_string(i));
        std::string term;
        if (mono.empty()) term = coef;
        else if (coef == "1") term = mono;
        else term = coef + "*" + mono;
        if (out.empty()) out = negative ? "-" + term : term;
        else out += negative ? " - " + term : " + " + term;
    }
    return out;
}

enum class FamilyKind { Exact, Numeric };

struct SolutionFamily {
    PolygonEdge edge;
    FamilyKind kind = FamilyKind::Exact;
    UniPoly modulus;                  ///< exact: monic square-free factor of P, nonzero roots
    std::optional<ComplexBall> root;  ///< numeric: certified root ball
    unsigned multiplicity = 1;
    bool exceptional = false;
    int orbit_class_id = 0;

    [[nodiscard]] std::optional<Rational> rational_root() const {
        if (kind == FamilyKind::Exact && modulus.degree() == 1) return -modulus.coeff(0);
        return std::nullopt;
    }
};

struct FamilyEnumeration {
    std::vector<SolutionFamily> families;
    long orbit_classes = 0;       ///< number of classes among all distinct nonzero roots
    std::string orbit_method;     ///< "trivial", "exact" or "numeric"
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[static_cast<std::size_t>(i)] == i ? i : parent[static_cast<std::size_t>(i)] = find(parent[static_cast<std::size_t>(i)]); }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
    std::vector<int> labels() {
        std::vector<int> out(parent.size()), ids(parent.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            int root = find(static_cast<int>(i));
            if (ids[static_cast<std::size_t>(root)] < 0) ids[static_cast<std::size_t>(root)] = next++;
            out[i] = ids[static_cast<std::size_t>(root)];
        }
        return out;
    }
};

/// exp(2 pi i j / s) as a ball.
inline ComplexBall root_of_unity(long j, long s, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 16;
    Real angle(wp), re(prec), im(prec);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_si(angle.get(), angle.get(), 2 * j, MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), s, MPFR_RNDN);
    mpfr_sin_cos(im.get(), re.get(), angle.get(), MPFR_RNDN);
    // Error of the angle and of the rounding, generously.
    return ComplexBall(re, im, Real::pow2(-static_cast<long>(prec) + 4));
}

/// Unions roots related by multiplication with an s-th root of unity (ball overlap).
inline void match_orbits_numeric(const std::vector<ComplexBall>& roots, long s, UnionFind& uf,
                                 const std::vector<int>& owner) {
    if (s <= 1) return;
    const mpfr_prec_t prec = roots.empty() ? 64 : roots.front().precision();
    for (long j = 1; j < s; ++j) {
        const ComplexBall zeta = root_of_unity(j, s, prec);
        for (std::size_t a = 0; a < roots.size(); ++a) {
            const ComplexBall rotated = zeta * roots[a];
            for (std::size_t b = 0; b < roots.size(); ++b)
                if (a != b && rotated.overlaps(roots[b])) uf.unite(owner[a], owner[b]);
        }
    }
}

/// Counts classes of the roots of square-free Q (nonzero roots) under c -> -c.
inline long exact_pair_classes(const UniPoly& q) {
    const UniPoly g = gcd(q, q.reflect());
    return (q.degree() - g.degree()) + g.degree() / 2;
}

}  // namespace detail

/**
 * Families of nonzero roots of P. Exact mode: square-free factors with their
 * rational roots split off as linear moduli. Numeric mode: one certified ball
 * per distinct root.
 */
inline FamilyEnumeration enumerate_families(const UniPoly& p, const PolygonEdge& edge, FamilyKind mode,
                                            unsigned precision_bits = 256) {
    if (p.degree() < 1) throw std::invalid_argument("characteristic polynomial must be nonconstant");
    UniPoly nz = p;
    if (nz.valuation() > 0) nz = nz / UniPoly::monomial(Rational(1), static_cast<std::size_t>(nz.valuation()));
    const long s = edge.s();
    FamilyEnumeration out;
    if (nz.degree() < 1) {
        out.orbit_method = "trivial";
        return out;
    }

    if (mode == FamilyKind::Exact) {
        for (const auto& [factor, mult] : squarefree_decompose(nz)) {
            UniPoly rest = factor;
            for (const auto& r : rational_roots(factor)) {
                UniPoly lin({Rational(-r), Rational(1)});
                rest = rest / lin;
                SolutionFamily fam;
                fam.edge = edge;
                fam.kind = FamilyKind::Exact;
                fam.modulus = lin;
                fam.multiplicity = mult;
                fam.exceptional = mult >= 2;
                out.families.push_back(std::move(fam));
            }
            if (rest.degree() > 0) {
                SolutionFamily fam;
                fam.edge = edge;
                fam.kind = FamilyKind::Exact;
                fam.modulus = rest.monic();
                fam.multiplicity = mult;
                fam.exceptional = mult >= 2;
                out.families.push_back(std::move(fam));
            }
        }
        detail::UnionFind uf(out.families.size());
        const UniPoly q = squarefree_part(nz);
        if (s == 1) {
            out.orbit_method = "trivial";
            out.orbit_classes = q.degree();
        } else if (s == 2) {
            out.orbit_method = "exact";
            out.orbit_classes = detail::exact_pair_classes(q);
            for (std::size_t i = 0; i < out.families.size(); ++i)
                for (std::size_t j = i + 1; j < out.families.size(); ++j)
                    if (gcd(out.families[i].modulus, out.families[j].modulus.reflect()).degree() > 0)
                        uf.unite(static_cast<int>(i), static_cast<int>(j));
        } else {
            out.orbit_method = "numeric";
            std::vector<ComplexBall> roots;
            std::vector<int> owner;
            for (std::size_t i = 0; i < out.families.size(); ++i)
                for (auto& rb : numeric_roots(out.families[i].modulus, precision_bits)) {
                    roots.push_back(rb.ball);
                    owner.push_back(static_cast<int>(i));
                }
            detail::UnionFind roots_uf(roots.size());
            std::vector<int> self(roots.size());
            std::iota(self.begin(), self.end(), 0);
            detail::match_orbits_numeric(roots, s, roots_uf, self);
            auto labels = roots_uf.labels();
            out.orbit_classes = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
            detail::match_orbits_numeric(roots, s, uf, owner);
        }
        auto labels = uf.labels();
        for (std::size_t i = 0; i < out.families.size(); ++i) out.families[i].orbit_class_id = labels[i];
        return out;
    }

    // Numeric mode.
    std::vector<ComplexBall> roots;
    for (auto& rb : numeric_roots(nz, precision_bits)) {
        SolutionFamily fam;
        fam.edge = edge;
        fam.kind = FamilyKind::Numeric;
        fam.root = rb.ball;
        fam.multiplicity = rb.multiplicity;
        fam.exceptional = rb.multiplicity >= 2;
        roots.push_back(rb.ball);
        out.families.push_back(std::move(fam));
    }
    detail::UnionFind uf(roots.size());
    std::vector<int> self(roots.size());
    std::iota(self.begin(), self.end(), 0);
    if (s == 1) {
        out.orbit_method = "trivial";
    } else if (s == 2) {
        // Pairs can only occur among the roots of G = gcd(Q(c), Q(-c)); match those by negation.
        out.orbit_method = "exact";
        const UniPoly q = squarefree_part(nz);
        const UniPoly g = gcd(q, q.reflect());
        for (std::size_t a = 0; a < roots.size(); ++a) {
            if (!eval_ball(g, roots[a]).contains_zero()) continue;
            for (std::size_t b = a + 1; b < roots.size(); ++b)
                if ((-roots[a]).overlaps(roots[b])) uf.unite(static_cast<int>(a), static_cast<int>(b));
        }
    } else {
        out.orbit_method = "numeric";
        detail::match_orbits_numeric(roots, s, uf, self);
    }
    auto labels = uf.labels();
    for (std::size_t i = 0; i < out.families.size(); ++i) out.families[i].orbit_class_id = labels[i];
    out.orbit_classes = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    return out;
}

}  // namespace puiseux
