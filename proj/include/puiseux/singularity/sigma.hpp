#pragma once

// Singular points of the equation and the fixed-singularity candidates:
// leading degeneracy, common roots of the A_j, the inverted equation at w = 0,
// and the Painleve-Picard system F = F_{y'} = F_x + y' F_y = 0.

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith/ball.hpp"
#include "puiseux/arith/number_field.hpp"
#include "puiseux/arith/resultant.hpp"
#include "puiseux/arith/roots.hpp"
#include "puiseux/model/diff_poly.hpp"

namespace puiseux {

/// Zeros of a polynomial in x: rational ones exactly, the rest as balls.
/// `everywhere` marks a condition that holds for all x (zero polynomial).
struct PointSet {
    bool everywhere = false;
    std::vector<Rational> exact;
    std::vector<ComplexBall> numeric;

    [[nodiscard]] bool empty() const { return !everywhere && exact.empty() && numeric.empty(); }
    [[nodiscard]] bool contains(const Rational& x) const {
        return everywhere || std::find(exact.begin(), exact.end(), x) != exact.end();
    }

    static PointSet zeros_of(const UniPoly& g, unsigned precision_bits = 256) {
        PointSet out;
        if (g.zero()) {
            out.everywhere = true;
            return out;
        }
        if (g.degree() < 1) return out;
        UniPoly rest = squarefree_part(g);
        for (const auto& r : rational_roots(rest)) {
            out.exact.push_back(r);
            rest = rest / UniPoly({-r, Rational(1)});
        }
        if (rest.degree() >= 1)
            for (auto& rb : numeric_roots(rest, precision_bits)) out.numeric.push_back(std::move(rb.ball));
        return out;
    }
};

namespace detail {

/// b(x0, y) for b = sum_j b_j(x) y^j.
inline UniPoly eval_x(const BiPoly& b, const Rational& x0) {
    std::vector<Rational> cs;
    cs.reserve(b.coeffs().size());
    for (const auto& c : b.coeffs()) cs.push_back(c(x0));
    return UniPoly(std::move(cs));
}

/// t(x0, y, y') as a polynomial in y' over Q[y].
inline Poly<UniPoly> eval_x(const TriPoly& t, const Rational& x0) {
    std::vector<UniPoly> cs;
    cs.reserve(t.coeffs().size());
    for (const auto& c : t.coeffs()) cs.push_back(eval_x(c, x0));
    return Poly<UniPoly>(std::move(cs));
}

/// gcd of the coefficients, monic (zero for the zero polynomial).
inline UniPoly content(const Poly<UniPoly>& p) {
    UniPoly g;
    for (const auto& c : p.coeffs()) g = gcd(g, c);
    return g;
}

inline Poly<UniPoly> primitive_part(const Poly<UniPoly>& p) {
    if (p.zero()) return p;
    const UniPoly g = content(p);
    std::vector<UniPoly> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c / g);
    return Poly<UniPoly>(std::move(cs));
}

/// Primitive gcd over Q(inner)[outer]; only its outer-degree part is meaningful.
inline Poly<UniPoly> primitive_gcd(Poly<UniPoly> a, Poly<UniPoly> b) {
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        Poly<UniPoly> r = a.pseudo_rem(b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return a;
}

inline Poly<NumberFieldElem> to_field(const Poly<UniPoly>& p, const NumberFieldElem::Modulus& m) {
    std::vector<NumberFieldElem> cs;
    for (const auto& c : p.coeffs()) cs.emplace_back(m, c);
    return Poly<NumberFieldElem>(std::move(cs));
}

/// Remove the rational content so that resultant coefficients stay small.
inline UniPoly normalised(const UniPoly& p) {
    if (p.zero()) return p;
    const auto ints = primitive_integer_coeffs(p);
    return UniPoly(std::vector<Rational>(ints.begin(), ints.end()));
}

inline BiPoly normalised(const BiPoly& p) {
    if (p.zero()) return p;
    Integer g = 0, l = 1;
    for (const auto& c : p.coeffs())
        for (const auto& v : c.coeffs()) {
            g = integer_gcd(g, v.get_num());
            l = integer_lcm(l, v.get_den());
        }
    const Rational scale = make_rational(l, g);
    std::vector<UniPoly> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c.scaled(scale));
    return BiPoly(std::move(cs));
}

}  // namespace detail

/// Zeros of the coefficients a_pq(x). `content_points` are those shared by every
/// coefficient (removable by dividing F by its x-content).
struct SingularPoints {
    PointSet points;
    PointSet content_points;
};

inline SingularPoints equation_singular_points(const DiffPoly& f, unsigned precision_bits = 256) {
    UniPoly acc(Rational(1));
    for (const auto& [k, a] : f.terms())
        if (a.degree() >= 1) acc = acc * squarefree_part(a);
    SingularPoints out;
    out.points = PointSet::zeros_of(acc, precision_bits);
    out.content_points = f.zero() ? PointSet{} : PointSet::zeros_of(f.x_content(), precision_bits);
    return out;
}

/// Outcome of a pointwise compatibility check of the Picard system.
enum class Compatibility { Compatible, Incompatible, Inconclusive };

inline std::string to_string(Compatibility c) {
    switch (c) {
        case Compatibility::Compatible: return "compatible";
        case Compatibility::Incompatible: return "incompatible";
        case Compatibility::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct CandidateCheck {
    Rational x0;
    Compatibility status = Compatibility::Inconclusive;
    std::optional<std::pair<Rational, Rational>> witness;  ///< (y, y') when rational
    bool on_curve = false;  ///< the solutions in (y, y') form a curve, not isolated points
    std::string note;
};

namespace detail {

/// Where polynomials in y' over Q[v] can have a common zero, projected to v:
/// everywhere (a shared factor in y', or nothing left to solve), a nonzero S(v)
/// vanishing at every such v, or undetermined when all eliminations vanish.
struct Locus {
    bool everywhere = false;
    bool undetermined = false;
    UniPoly s;
    Poly<UniPoly> shared;  ///< shared factor in y' when everywhere
    std::string note;
};

inline Locus elimination_locus(std::vector<Poly<UniPoly>> polys) {
    Locus out;
    std::erase_if(polys, [](const Poly<UniPoly>& p) { return p.zero(); });
    if (polys.empty()) {
        out.everywhere = true;
        out.note = "all equations vanish identically";
        return out;
    }
    Poly<UniPoly> h = polys[0];
    for (std::size_t i = 1; i < polys.size(); ++i) h = primitive_gcd(h, polys[i]);
    if (h.degree() >= 1) {
        out.everywhere = true;
        out.shared = h;
        out.note = polys.size() == 1 ? "single equation" : "shared factor in y'";
        return out;
    }
    bool have_s = false;
    for (const auto& p : polys)
        if (p.degree() == 0) {
            out.s = gcd(out.s, p.coeff(0));
            have_s = true;
        }
    for (long k = 1; k <= 4 && !have_s; ++k) {
        Poly<UniPoly> comb;
        long w = 1;
        for (std::size_t i = 1; i < polys.size(); ++i, w *= k)
            comb = comb + polys[i] * Poly<UniPoly>(UniPoly(Rational(w)));
        UniPoly r = resultant(polys[0], comb);
        if (r.zero()) continue;
        out.s = r;
        have_s = true;
    }
    if (!have_s) {
        out.undetermined = true;
        out.note = "every elimination vanished identically";
    }
    return out;
}

/// Common zero in C^2 of polynomials in y' over Q[y], decided exactly.
inline CandidateCheck common_zero(std::vector<Poly<UniPoly>> polys) {
    CandidateCheck out;
    std::erase_if(polys, [](const Poly<UniPoly>& p) { return p.zero(); });
    const Locus locus = elimination_locus(polys);
    out.note = locus.note;
    if (locus.everywhere) {
        out.status = Compatibility::Compatible;
        out.on_curve = true;
        if (locus.shared.zero()) {
            out.witness = std::pair{Rational(0), Rational(0)};
            return out;
        }
        const Poly<UniPoly>& h = locus.shared;
        for (long y = 0; y <= 20 && !out.witness; ++y)
            for (const Rational& yv : {Rational(y), Rational(-y)}) {
                if (is_zero(h.lc()(yv))) continue;
                auto roots = rational_roots(eval_x(h, yv));
                if (!roots.empty()) {
                    out.witness = std::pair{yv, roots.front()};
                    break;
                }
            }
        return out;
    }
    if (locus.undetermined) return out;
    const UniPoly& s = locus.s;
    if (s.degree() < 1) {
        out.status = Compatibility::Incompatible;
        return out;
    }

    UniPoly rest = squarefree_part(s);
    for (const auto& y0 : rational_roots(rest)) {
        rest = rest / UniPoly({-y0, Rational(1)});
        UniPoly g;
        for (const auto& p : polys) g = gcd(g, eval_x(p, y0));
        if (g.zero() || g.degree() >= 1) {
            out.status = Compatibility::Compatible;
            const auto roots = g.zero() ? std::vector<Rational>{Rational(0)} : rational_roots(g);
            if (!roots.empty()) out.witness = std::pair{y0, roots.front()};
            return out;
        }
    }
    if (rest.degree() >= 1) {
        // Remaining y-values are algebraic: gcd over Q[y]/(rest) with splitting.
        auto mod = NumberFieldElem::make_modulus(rest);
        std::vector<ComponentGcd> parts{{mod, to_field(polys[0], mod)}};
        for (std::size_t i = 1; i < polys.size(); ++i) {
            std::vector<ComponentGcd> next;
            for (const auto& part : parts)
                for (auto& c : dynamic_gcd(part.gcd, to_field(polys[i], part.modulus), part.modulus)) next.push_back(c);
            parts = std::move(next);
        }
        for (const auto& part : parts)
            if (part.gcd.zero() || part.gcd.degree() >= 1) {
                out.status = Compatibility::Compatible;
                out.note = "algebraic witness y with minimal polynomial " + part.modulus->to_string("y");
                return out;
            }
    }
    out.status = Compatibility::Incompatible;
    return out;
}

inline std::vector<TriPoly> picard_system(const DiffPoly& f) {
    const DiffPoly f1 = f.partial(Variable::DY);
    const DiffPoly f2 = f.partial(Variable::X) + DiffPoly::dy() * f.partial(Variable::Y);
    return {f.to_tri(), f1.to_tri(), f2.to_tri()};
}

}  // namespace detail

/// Does F = F_{y'} = F_x + y' F_y = 0 have a solution (y, y') at x = x0?
inline CandidateCheck verify_candidate(const DiffPoly& f, const Rational& x0) {
    std::vector<Poly<UniPoly>> at;
    for (const auto& t : detail::picard_system(f)) at.push_back(detail::eval_x(t, x0));
    CandidateCheck out = detail::common_zero(std::move(at));
    out.x0 = x0;
    return out;
}

/// The three bullet sets: A_s(x0, y) == 0; the A_j(x0, y) share a root;
/// the inverted equation's coefficients vanish together at w = 0.
struct SigmaBullets {
    PointSet leading_degeneracy;
    PointSet common_root;              ///< zeros of the eliminant (candidates)
    std::vector<Rational> common_root_verified;
    PointSet inverted_common_root;
};

inline SigmaBullets sigma_bullets(const DiffPoly& f, unsigned precision_bits = 256) {
    SigmaBullets out;
    const auto a = f.coeff_view_by_dy();

    UniPoly lead;
    for (const auto& c : a.back().coeffs()) lead = gcd(lead, c);
    out.leading_degeneracy = PointSet::zeros_of(lead, precision_bits);

    std::vector<BiPoly> nonzero;
    for (const auto& aj : a)
        if (!aj.zero()) nonzero.push_back(aj);
    auto shares_root_at = [&](const Rational& x0) {
        UniPoly g;
        for (const auto& aj : nonzero) g = gcd(g, detail::eval_x(aj, x0));
        return g.zero() || g.degree() >= 1;
    };
    if (nonzero.size() == 1) {
        if (nonzero[0].degree() >= 1) out.common_root.everywhere = true;
        else out.common_root = PointSet::zeros_of(nonzero[0].coeff(0), precision_bits);
    } else if (!nonzero.empty()) {
        std::size_t lowest = 0;
        for (std::size_t i = 1; i < nonzero.size(); ++i)
            if (nonzero[i].degree() < nonzero[lowest].degree()) lowest = i;
        std::optional<UniPoly> elim;
        for (long k = 1; k <= 4 && !elim; ++k) {
            BiPoly comb;
            long w = 1;
            for (std::size_t i = 0; i < nonzero.size(); ++i)
                if (i != lowest) {
                    comb = comb + nonzero[i] * BiPoly(UniPoly(Rational(w)));
                    w *= k;
                }
            UniPoly r = nonzero[lowest].degree() == 0 && comb.degree() == 0
                            ? gcd(nonzero[lowest].coeff(0), comb.coeff(0))
                            : resultant(nonzero[lowest], comb);
            if (!r.zero()) elim = r;
        }
        if (!elim) {
            out.common_root.everywhere = true;
        } else {
            out.common_root = PointSet::zeros_of(*elim, precision_bits);
        }
    }
    for (const auto& x0 : out.common_root.exact)
        if (shares_root_at(x0)) out.common_root_verified.push_back(x0);

    const DiffPoly inv = f.invert_dependent();
    UniPoly g;
    for (unsigned q = 0; q <= inv.order_in_dy(); ++q) g = gcd(g, inv.coeff(0, q));
    out.inverted_common_root = PointSet::zeros_of(g, precision_bits);
    return out;
}

struct PicardReport {
    std::optional<UniPoly> eliminant;     ///< nullopt: identically zero
    std::optional<BiPoly> shared_factor;  ///< common factor of R1 and R2, treated separately
    std::string shared_note;
    PointSet candidates;
    std::vector<CandidateCheck> checks;  ///< rational candidates, or spot checks when identically zero
    std::vector<Rational> verified;
    std::vector<Rational> additional;  ///< verified points that are not singular points of the equation

    [[nodiscard]] bool identically_zero() const { return !eliminant.has_value(); }
};

namespace detail {

/// The system restricted to y = -g0(x)/g1(x), denominators cleared: polynomials in y' over Q[x].
inline std::vector<Poly<UniPoly>> restrict_to_line(const std::vector<TriPoly>& sys, const BiPoly& g) {
    const UniPoly g0 = g.coeff(0), g1 = g.coeff(1);
    std::vector<Poly<UniPoly>> out;
    for (const auto& t : sys) {
        long d = 0;
        for (const auto& b : t.coeffs()) d = std::max(d, b.degree());
        std::vector<UniPoly> cs;
        for (const auto& b : t.coeffs()) {
            UniPoly acc;
            for (long j = 0; j <= b.degree(); ++j)
                acc += b.coeff(static_cast<std::size_t>(j)) * pow(-g0, static_cast<unsigned>(j)) *
                       pow(g1, static_cast<unsigned>(d - j));
            cs.push_back(acc);
        }
        out.emplace_back(std::move(cs));
    }
    return out;
}

}  // namespace detail

/// R1 = Res_{y'}(F, F_{y'}), R2 = Res_{y'}(F, F_x + y' F_y), eliminant = Res_y(R1, R2).
/// Factors of x dividing R1 or R2 wholesale are kept as candidates. A factor shared
/// by R1 and R2 is split off: along it the system is restricted and eliminated
/// directly (linear factors) or spot-checked.
inline PicardReport picard_eliminant(const DiffPoly& f, unsigned spot_checks = 5, unsigned seed = 7,
                                     unsigned precision_bits = 256) {
    if (!f.depends_on_dy()) throw std::invalid_argument("Picard system needs an equation involving y'");
    const auto sys = detail::picard_system(f);
    PicardReport out;
    const BiPoly r1 = detail::normalised(resultant(sys[0], sys[1]));
    const BiPoly r2 = detail::normalised(resultant(sys[0], sys[2]));

    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
    auto spot = [&]() {
        std::vector<CandidateCheck> checks;
        for (unsigned i = 0; i < spot_checks; ++i) checks.push_back(verify_candidate(f, make_rational(num(rng), den(rng))));
        return checks;
    };
    auto all_compatible = [](const std::vector<CandidateCheck>& cs) {
        return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.status == Compatibility::Compatible; });
    };

    UniPoly elim;
    bool curve = r1.zero() || r2.zero();
    if (!curve) {
        BiPoly q1 = detail::primitive_part(r1), q2 = detail::primitive_part(r2);
        const UniPoly c1 = detail::content(r1), c2 = detail::content(r2);
        UniPoly extra(Rational(1));
        const BiPoly shared = detail::primitive_gcd(r1, r2);
        if (shared.degree() >= 1) {
            out.shared_factor = detail::normalised(shared);
            q1 = exact_div(q1, shared);
            q2 = exact_div(q2, shared);
            BiPoly base = shared;
            const BiPoly repeated = detail::primitive_gcd(shared, shared.derivative());
            if (repeated.degree() >= 1) base = detail::primitive_part(exact_div(shared, repeated));
            if (base.degree() == 1) {
                const auto locus = detail::elimination_locus(detail::restrict_to_line(sys, base));
                if (locus.everywhere) {
                    curve = true;
                    out.shared_note = "system compatible along the shared factor";
                } else if (locus.undetermined) {
                    out.shared_note = "shared factor unresolved: " + locus.note;
                } else {
                    extra = locus.s;
                    out.shared_note = "shared factor restricted and eliminated";
                }
            } else {
                auto checks = spot();
                curve = all_compatible(checks);
                out.shared_note = curve ? "shared factor of degree > 1; spot checks compatible"
                                        : "shared factor of degree > 1 not resolved";
            }
        }
        if (!curve) {
            UniPoly e = q1.degree() == 0 && q2.degree() == 0 ? gcd(q1.coeff(0), q2.coeff(0)) : resultant(q1, q2);
            if (e.zero()) curve = true;
            else elim = detail::normalised(squarefree_part(e * c1 * c2 * extra));
        }
    }
    if (curve) {
        out.checks = spot();
        out.candidates.everywhere = true;
        return out;
    }
    out.eliminant = elim;
    out.candidates = PointSet::zeros_of(elim, precision_bits);
    const PointSet singular = equation_singular_points(f, precision_bits).points;
    for (const auto& x0 : out.candidates.exact) {
        out.checks.push_back(verify_candidate(f, x0));
        if (out.checks.back().status != Compatibility::Compatible) continue;
        out.verified.push_back(x0);
        if (!singular.contains(x0)) out.additional.push_back(x0);
    }
    return out;
}

/// Everything the Sigma analysis produces for one equation.
struct SigmaReport {
    SingularPoints singular;
    SigmaBullets bullets;
    std::optional<PicardReport> picard;  ///< absent for equations without y'
};

inline SigmaReport analyze_sigma(const DiffPoly& f, unsigned precision_bits = 256) {
    SigmaReport out;
    out.singular = equation_singular_points(f, precision_bits);
    out.bullets = sigma_bullets(f, precision_bits);
    if (f.depends_on_dy()) out.picard = picard_eliminant(f, 5, 7, precision_bits);
    return out;
}

}  // namespace puiseux
