#pragma once

/**
 * @file ansatz.hpp
 * @brief Order-by-order continuation of a seed directly on F, with no
 *        Theorem 1 guarantee, and the exceptional-root explorer built on it.
 *
 * A step at t-exponent e looks at R(z) = F(phi + z t^e), a polynomial in z
 * whose coefficients are Laurent polynomials in t. Q(z) collects the
 * coefficients at the lowest t-order mu reached by any power of z.
 */

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith/roots.hpp"
#include "puiseux/model/series.hpp"

namespace puiseux {

enum class AnsatzStatus { Complete, StepFailure, Branching };

inline std::string to_string(AnsatzStatus s) {
    switch (s) {
        case AnsatzStatus::Complete: return "complete";
        case AnsatzStatus::StepFailure: return "step failure";
        case AnsatzStatus::Branching: return "branching - not resolved";
    }
    return "";
}

/// Starting data: fixed terms in xi, the ramification and where free coefficients begin.
struct AnsatzSeed {
    std::map<Rational, Rational> terms;  ///< exponent in xi -> coefficient; nonempty, no zero values
    long s = 1;
    std::optional<Rational> first_free;  ///< first free exponent in xi (default: just after the seed)
};

struct AnsatzStep {
    long t_exponent = 0;
    UniPoly balance;                   ///< Q(z)
    Rational chosen;
    std::vector<Rational> alternatives;  ///< other rational roots of Q, not taken
    std::string rule;
};

struct AnsatzResult {
    TruncatedSeries<Rational> series;
    AnsatzStatus status = AnsatzStatus::Complete;
    long stopped_at = 0;                 ///< k of the failing step (1-based), 0 when complete
    std::string message;
    std::vector<AnsatzStep> steps;
    std::vector<Rational> branch_roots;  ///< rational roots of Q at a branching step
};

namespace detail {

/// Lagrange basis on nodes 0..d, as coefficient vectors.
inline std::vector<UniPoly> lagrange_basis(long d) {
    std::vector<UniPoly> out;
    for (long i = 0; i <= d; ++i) {
        UniPoly l(Rational(1));
        for (long j = 0; j <= d; ++j) {
            if (j == i) continue;
            l = l * UniPoly({Rational(-j), Rational(1)});
            l = l.scaled(make_rational(1, i - j));
        }
        out.push_back(l);
    }
    return out;
}

/// R_j(t) with R(z) = sum_j R_j z^j = F(phi + z t^e), exact.
inline std::vector<Laurent<Rational>> residual_in_z(const DiffPoly& f, const TruncatedSeries<Rational>& phi, long e) {
    const long d = std::max<long>(1, f.total_degree());
    std::vector<Laurent<Rational>> values;
    for (long z = 0; z <= d; ++z) {
        TruncatedSeries<Rational> trial = phi;
        const long idx = e - trial.r;
        if (idx < 0) throw std::logic_error("ansatz step below the leading exponent");
        if (trial.coeffs.size() <= static_cast<std::size_t>(idx)) trial.coeffs.resize(static_cast<std::size_t>(idx) + 1, Rational(0));
        trial.coeffs[static_cast<std::size_t>(idx)] += Rational(z);
        values.push_back(substitute_exact(f, trial, Rational(0)).series);
    }
    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    for (const auto& v : values) {
        if (v.identically_zero()) continue;
        lo = std::min(lo, v.low());
        hi = std::max(hi, v.high());
    }
    std::vector<Laurent<Rational>> out(static_cast<std::size_t>(d) + 1);
    if (lo > hi) return out;
    const auto basis = lagrange_basis(d);
    for (long j = 0; j <= d; ++j) {
        std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1), Rational(0));
        for (long i = 0; i <= d; ++i) {
            const Rational w = basis[static_cast<std::size_t>(i)].coeff(static_cast<std::size_t>(j));
            if (is_zero(w)) continue;
            for (long ex = lo; ex <= hi; ++ex) c[static_cast<std::size_t>(ex - lo)] += w * values[static_cast<std::size_t>(i)].coeff(ex, Rational(0));
        }
        out[static_cast<std::size_t>(j)] = Laurent<Rational>(lo, std::move(c));
    }
    return out;
}

/// Whether z -> -z is induced by t -> zeta t (zeta^s = 1) fixing the earlier nonzero terms.
inline bool negation_allowed(const TruncatedSeries<Rational>& phi, long e) {
    long g = phi.s;
    for (std::size_t k = 0; k < phi.coeffs.size(); ++k)
        if (!is_zero(phi.coeffs[k])) g = std::gcd(g, std::labs(phi.r + static_cast<long>(k)));
    if (g == 0) return false;
    const long ord = g / std::gcd(g, std::labs(e));
    return ord % 2 == 0;
}

/// Outcome of one dominant-balance step.
struct StepOutcome {
    AnsatzStatus status = AnsatzStatus::Complete;
    AnsatzStep step;
    std::vector<Rational> roots;  ///< distinct rational roots at a branching step
    std::string message;
};

inline StepOutcome ansatz_step(const DiffPoly& f, const TruncatedSeries<Rational>& phi, long e) {
    StepOutcome out;
    out.step.t_exponent = e;
    const auto rj = residual_in_z(f, phi, e);
    long mu = std::numeric_limits<long>::max();
    for (const auto& r : rj)
        if (!r.identically_zero()) mu = std::min(mu, r.low());
    if (mu == std::numeric_limits<long>::max()) {
        // F(phi + z t^e) vanishes for every z.
        out.status = AnsatzStatus::Branching;
        out.message = "every value of the coefficient solves the equation";
        return out;
    }
    std::vector<Rational> q;
    for (const auto& r : rj) q.push_back(r.identically_zero() ? Rational(0) : r.coeff(mu, Rational(0)));
    UniPoly balance(q);
    out.step.balance = balance;
    if (balance.degree() == 0) {
        out.status = AnsatzStatus::StepFailure;
        out.message = "linear coefficient vanishes but the residual does not";
        return out;
    }
    const Rational a0 = balance.coeff(0), a1 = balance.coeff(1);
    auto others = [&](const Rational& chosen) {
        std::vector<Rational> alt;
        for (const auto& r : rational_roots(balance))
            if (r != chosen) alt.push_back(r);
        return alt;
    };
    if (balance.degree() == 1) {
        out.step.chosen = -a0 / a1;
        out.step.rule = "linear";
        return out;
    }
    if (is_zero(a0) && !is_zero(a1)) {
        out.step.chosen = 0;
        out.step.alternatives = others(Rational(0));
        out.step.rule = "simple zero root";
        return out;
    }
    const auto roots = rational_roots(balance);
    const UniPoly sqf = squarefree_part(balance);
    const bool all_rational = static_cast<long>(roots.size()) == sqf.degree();
    bool one_orbit = false;
    if (all_rational && roots.size() == 1) one_orbit = true;
    if (all_rational && roots.size() == 2 && roots[0] == -roots[1] && negation_allowed(phi, e)) one_orbit = true;
    if (one_orbit) {
        out.step.chosen = *std::max_element(roots.begin(), roots.end());
        out.step.alternatives = others(out.step.chosen);
        out.step.rule = "single orbit";
        return out;
    }
    out.status = AnsatzStatus::Branching;
    out.roots = roots;
    out.message = "balance polynomial " + balance.to_string("z") + " has several inequivalent roots";
    return out;
}

inline TruncatedSeries<Rational> seed_series(const AnsatzSeed& seed, const Rational& x0) {
    if (seed.terms.empty()) throw std::invalid_argument("ansatz seed has no terms");
    if (seed.s < 1) throw std::invalid_argument("ramification must be positive");
    for (const auto& [e, c] : seed.terms) {
        if (is_zero(c)) throw std::invalid_argument("ansatz seed has a zero coefficient");
        if (!is_integer(e * seed.s))
            throw std::invalid_argument("seed exponent " + to_string(e) + " is not a multiple of 1/" + std::to_string(seed.s));
    }
    return from_exponent_map(seed.terms, x0, seed.s);
}

inline long first_free_exponent(const AnsatzSeed& seed, const TruncatedSeries<Rational>& phi) {
    const long after = phi.r + static_cast<long>(phi.coeffs.size());
    if (!seed.first_free) return after;
    const Rational e = *seed.first_free * seed.s;
    if (!is_integer(e)) throw std::invalid_argument("first free exponent is not a multiple of 1/s");
    const long fe = to_long(e.get_num());
    if (fe <= phi.r) throw std::invalid_argument("first free exponent must exceed the leading exponent");
    if (fe < after) throw std::invalid_argument("first free exponent overlaps the seed");
    return fe;
}

inline void set_coeff(TruncatedSeries<Rational>& phi, long e, const Rational& v) {
    const auto idx = static_cast<std::size_t>(e - phi.r);
    if (phi.coeffs.size() <= idx) phi.coeffs.resize(idx + 1, Rational(0));
    phi.coeffs[idx] = v;
}

}  // namespace detail

/**
 * Continues the seed by n_terms free coefficients at consecutive orders
 * 1/s apart. Stops at the first order that fails or branches.
 */
inline AnsatzResult continue_ansatz(const DiffPoly& f, const Rational& x0, const AnsatzSeed& seed, long n_terms) {
    if (n_terms < 0) throw std::invalid_argument("number of terms must be nonnegative");
    AnsatzResult out;
    out.series = detail::seed_series(seed, x0);
    const long start = detail::first_free_exponent(seed, out.series);
    for (long k = 1; k <= n_terms; ++k) {
        const long e = start + k - 1;
        auto step = detail::ansatz_step(f, out.series, e);
        if (step.status != AnsatzStatus::Complete) {
            out.status = step.status;
            out.stopped_at = k;
            out.message = "order " + to_string(make_rational(e, out.series.s)) + ": " + step.message;
            out.branch_roots = step.roots;
            out.steps.push_back(step.step);
            return out;
        }
        detail::set_coeff(out.series, e, step.step.chosen);
        out.steps.push_back(std::move(step.step));
    }
    return out;
}

struct ExploreCandidate {
    TruncatedSeries<Rational> series;
    bool identically_zero = false;
    std::optional<Rational> residual_order;
    std::vector<AnsatzStep> steps;
};

struct ExploreResult {
    std::vector<ExploreCandidate> candidates;
    std::vector<std::string> notes;
    [[nodiscard]] bool undetermined() const { return candidates.empty(); }
    [[nodiscard]] std::string status() const {
        return candidates.empty() ? "exceptional - undetermined" : "candidates found";
    }
};

struct ExploreOptions {
    long s_max = 4;
    long n_terms = 16;
    std::size_t max_candidates = 8;
    std::size_t max_nodes = 256;
};

/**
 * Depth-first continuation of the leading term c xi^lambda for trial
 * ramifications that are multiples of lambda's denominator. Branches only at
 * branching steps, over rational roots up to z -> -z symmetry. A candidate
 * needs all n_terms steps resolved and a residual order above the one of the
 * leading term alone (or an identically zero residual).
 */
inline ExploreResult exceptional_explore(const DiffPoly& f, const Rational& x0, const Rational& c,
                                         const Rational& lambda, const ExploreOptions& opt = {}) {
    if (is_zero(c)) throw std::invalid_argument("leading coefficient must be nonzero");
    ExploreResult out;
    const long base_s = lambda.get_den().get_si();
    std::size_t nodes = 0;
    std::vector<std::map<Rational, Rational>> seen;

    for (long sp = base_s; sp <= opt.s_max; sp += base_s) {
        AnsatzSeed seed{{{lambda, c}}, sp, std::nullopt};
        TruncatedSeries<Rational> phi0 = detail::seed_series(seed, x0);
        const auto r0 = substitute_exact(f, phi0, Rational(0));
        const std::optional<Rational> order0 = r0.order();

        struct Node {
            TruncatedSeries<Rational> phi;
            long e;
            long done;
            std::vector<AnsatzStep> steps;
        };
        std::vector<Node> stack{{phi0, detail::first_free_exponent(seed, phi0), 0, {}}};
        while (!stack.empty() && out.candidates.size() < opt.max_candidates) {
            Node node = std::move(stack.back());
            stack.pop_back();
            if (++nodes > opt.max_nodes) {
                out.notes.push_back("search budget exhausted");
                break;
            }
            bool alive = true;
            while (alive && node.done < opt.n_terms) {
                auto step = detail::ansatz_step(f, node.phi, node.e);
                if (step.status == AnsatzStatus::StepFailure) {
                    alive = false;
                } else if (step.status == AnsatzStatus::Branching) {
                    alive = false;
                    std::vector<Rational> reps;
                    const bool neg = detail::negation_allowed(node.phi, node.e);
                    for (const auto& z : step.roots)
                        if (!(neg && z < 0 && std::find(step.roots.begin(), step.roots.end(), -z) != step.roots.end()))
                            reps.push_back(z);
                    for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
                        Node child = node;
                        detail::set_coeff(child.phi, child.e, *it);
                        AnsatzStep chosen = step.step;
                        chosen.chosen = *it;
                        chosen.rule = "branch";
                        child.steps.push_back(chosen);
                        ++child.e;
                        ++child.done;
                        stack.push_back(std::move(child));
                    }
                } else {
                    detail::set_coeff(node.phi, node.e, step.step.chosen);
                    node.steps.push_back(step.step);
                    ++node.e;
                    ++node.done;
                }
            }
            if (!alive) continue;
            const auto res = substitute_exact(f, node.phi, Rational(0));
            ExploreCandidate cand;
            cand.identically_zero = res.identically_zero();
            cand.residual_order = res.order();
            if (!cand.identically_zero && order0 && cand.residual_order && *cand.residual_order <= *order0) continue;
            // Same nonzero terms as an earlier candidate (found at a smaller ramification).
            std::map<Rational, Rational> terms;
            for (std::size_t k = 0; k < node.phi.coeffs.size(); ++k)
                if (!is_zero(node.phi.coeffs[k])) terms[node.phi.exponent(static_cast<long>(k))] = node.phi.coeffs[k];
            bool dup = false;
            for (const auto& t : seen) {
                // Prefix agreement up to the shorter truncation.
                const Rational top = std::min(t.empty() ? Rational(0) : t.rbegin()->first,
                                              terms.empty() ? Rational(0) : terms.rbegin()->first);
                bool same = true;
                for (const auto& [e, v] : t)
                    if (e <= top && (!terms.count(e) || terms.at(e) != v)) same = false;
                for (const auto& [e, v] : terms)
                    if (e <= top && (!t.count(e) || t.at(e) != v)) same = false;
                if (same) dup = true;
            }
            if (dup) continue;
            seen.push_back(terms);
            cand.series = std::move(node.phi);
            cand.steps = std::move(node.steps);
            out.candidates.push_back(std::move(cand));
        }
    }
    if (!f.depends_on_y() && !out.candidates.empty())
        out.notes.push_back("F does not involve y: every candidate plus an arbitrary constant K is again a solution");
    if (out.candidates.size() >= opt.max_candidates) out.notes.push_back("candidate cap reached");
    return out;
}

}  // namespace puiseux
