#pragma once

// One AnalysisReport per command. The JSON and text renderers both read this
// object and nothing else.

#include <algorithm>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "puiseux/diagnostics/growth.hpp"
#include "puiseux/engine/ansatz.hpp"
#include "puiseux/engine/theorem1.hpp"
#include "puiseux/engine/verify.hpp"
#include "puiseux/model/parser.hpp"
#include "puiseux/polygon/characteristic.hpp"
#include "puiseux/polygon/polygon.hpp"
#include "puiseux/singularity/sigma.hpp"

namespace puiseux {

inline constexpr const char* kToolName = "puiseux";
inline constexpr const char* kToolVersion = "1.0.0";

/// A well-formed request the tool declines (exit code 2).
class UnsupportedRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AnalyzeOptions {
    long terms = 16;
    FamilyKind mode = FamilyKind::Exact;
    unsigned precision = 256;
    long s_max = 4;
    bool force = false;
    bool explore = true;  ///< run the explorer on exceptional families
    PolygonKind polygon = PolygonKind::Petrovic;
    long max_field_degree = 12;  ///< exact mode falls back to balls above this modulus degree
    unsigned jobs = 1;
    bool sigma = true;
    std::optional<std::size_t> family;  ///< restrict expansion to one family
};

struct VerificationEntry {
    Rational target;
    OrderCheck check;
};

struct DiagnosticsEntry {
    std::optional<ComplexBall> conjugate;  ///< root of the modulus, for number-field series
    GrowthProfile profile;
    Verdict verdict;
};

struct SeriesReport {
    std::optional<std::size_t> family;
    std::string source;  ///< "theorem1", "explore", "ansatz" or "literal"
    std::optional<UniPoly> modulus;
    AnySeries series;
    bool heuristic = false;  ///< no existence guarantee behind the coefficients
    std::string status;
    std::vector<AnsatzStep> steps;
    std::vector<std::string> notes;
    std::optional<VerificationEntry> verification;
    std::vector<DiagnosticsEntry> diagnostics;
};

struct EdgeReport {
    PolygonEdge edge;
    CharacteristicPoly characteristic;
    long orbit_classes = 0;
    std::string orbit_method;
};

struct FamilyReport {
    std::size_t edge = 0;
    SolutionFamily family;
    std::string status;
    std::vector<std::string> notes;
};

struct AnalysisReport {
    std::string command;
    std::string input;
    DiffPoly equation;
    Rational x0;
    SingularPoints singular;
    bool x0_singular = false;
    std::optional<std::string> stopped;  ///< why the polygon analysis did not run
    std::optional<SigmaReport> sigma;
    std::optional<Polygon> polygon;
    std::vector<EdgeReport> edges;
    std::vector<FamilyReport> families;
    std::vector<SeriesReport> series;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> options;
};

namespace detail {

inline std::string mode_name(FamilyKind k) { return k == FamilyKind::Exact ? "exact" : "numeric"; }

inline std::vector<std::pair<std::string, std::string>> option_list(const AnalyzeOptions& o) {
    return {{"terms", std::to_string(o.terms)},
            {"mode", mode_name(o.mode)},
            {"precision", std::to_string(o.precision)},
            {"smax", std::to_string(o.s_max)},
            {"force", o.force ? "true" : "false"},
            {"explore", o.explore ? "true" : "false"},
            {"polygon", to_string(o.polygon)},
            {"jobs", std::to_string(o.jobs)}};
}

template <class T>
VerificationEntry check_series(const DiffPoly& f, const TruncatedSeries<T>& s, const Rational& target) {
    if constexpr (std::is_same_v<T, Rational>) return {target, verify_order(f, s, target)};
    else return {target, verify_order(f, s, target, embed(Rational(0), s.coeffs.at(0)))};
}

inline VerificationEntry check_any(const DiffPoly& f, const AnySeries& s, const Rational& target) {
    return std::visit([&](const auto& ts) { return check_series(f, ts, target); }, s);
}

inline std::vector<DiagnosticsEntry> diagnose(const SeriesReport& rep, unsigned precision) {
    std::vector<DiagnosticsEntry> out;
    auto add = [&](std::optional<ComplexBall> root, const GrowthProfile& p) {
        out.push_back({std::move(root), p, classify(p)});
    };
    if (const auto* q = std::get_if<TruncatedSeries<Rational>>(&rep.series)) add(std::nullopt, profile(*q));
    else if (const auto* b = std::get_if<TruncatedSeries<ComplexBall>>(&rep.series)) add(std::nullopt, profile(*b));
    else {
        const auto& nf = std::get<TruncatedSeries<NumberFieldElem>>(rep.series);
        for (const auto& rb : numeric_roots(*rep.modulus, precision))
            add(rb.ball, profile(evaluate_at_root(nf, rb.ball)));
    }
    return out;
}

/// Residual order guaranteed after n corrections of a Theorem 1 expansion: (n + 1)/s + gamma.
inline Rational theorem1_target(const PolygonEdge& e, long corrections) {
    return make_rational(corrections + 1, e.s()) + e.gamma;
}

inline std::optional<Rational> rational_leading(const SolutionFamily& fam, const UniPoly& p) {
    if (auto r = fam.rational_root()) return r;
    if (!fam.root) return std::nullopt;
    for (const auto& r : rational_roots(p))
        if (!is_zero(r) && fam.root->overlaps(ComplexBall(r, fam.root->precision()))) return r;
    return std::nullopt;
}

struct FamilyOutcome {
    std::string status;
    std::vector<std::string> notes;
    std::vector<SeriesReport> series;
};

inline FamilyOutcome run_family(const DiffPoly& f, const Rational& x0, const SolutionFamily& fam, std::size_t index,
                                const UniPoly& p, const AnalyzeOptions& opt) {
    FamilyOutcome out;
    if (fam.exceptional) {
        if (!opt.explore) {
            out.status = "exceptional - not explored";
            out.notes.push_back("multiple root of P: Theorem 1 does not apply; rerun with --explore");
            return out;
        }
        const auto c = rational_leading(fam, p);
        if (!c) {
            out.status = "exceptional - undetermined";
            out.notes.push_back("the explorer needs a rational leading coefficient");
            return out;
        }
        const auto res = exceptional_explore(f, x0, *c, fam.edge.lambda, ExploreOptions{opt.s_max, opt.terms, 8, 256});
        out.status = res.status() == "candidates found" ? "exceptional - candidates found" : res.status();
        out.notes = res.notes;
        for (const auto& cand : res.candidates) {
            SeriesReport sr;
            sr.family = index;
            sr.source = "explore";
            sr.series = cand.series;
            sr.heuristic = true;
            sr.status = cand.identically_zero ? "identically zero residual" : "candidate";
            sr.steps = cand.steps;
            sr.verification = check_series(f, cand.series, cand.series.truncation_order());
            sr.diagnostics = diagnose(sr, opt.precision);
            out.series.push_back(std::move(sr));
        }
        return out;
    }
    if (!theorem1_admissible(f, x0, opt.polygon)) {
        out.status = "not expanded";
        out.notes.push_back("Theorem 1 needs a nonsingular base point");
        return out;
    }
    try {
        for (auto& part : expand_family(f, x0, fam, opt.terms, opt.polygon)) {
            SeriesReport sr;
            sr.family = index;
            sr.source = "theorem1";
            sr.modulus = part.modulus;
            sr.series = std::move(part.series);
            sr.status = "expanded";
            sr.verification = check_any(f, sr.series, theorem1_target(fam.edge, opt.terms));
            sr.diagnostics = diagnose(sr, opt.precision);
            out.series.push_back(std::move(sr));
        }
        out.status = "theorem1";
        if (out.series.size() > 1)
            out.notes.push_back("modulus split into " + std::to_string(out.series.size()) + " components");
    } catch (const PrecisionExhausted& e) {
        out.status = "not expanded";
        out.notes.push_back(std::string(e.what()) + "; raise --precision");
    }
    return out;
}

/// Exact families whose modulus is too large for dynamic evaluation become one ball family per root.
inline std::vector<SolutionFamily> with_fallback(const std::vector<SolutionFamily>& fams, const AnalyzeOptions& opt,
                                                 std::vector<std::string>& warnings) {
    std::vector<SolutionFamily> out;
    for (const auto& fam : fams) {
        if (fam.kind != FamilyKind::Exact || fam.modulus.degree() <= opt.max_field_degree) {
            out.push_back(fam);
            continue;
        }
        warnings.push_back("modulus of degree " + std::to_string(fam.modulus.degree()) + " exceeds " +
                           std::to_string(opt.max_field_degree) + "; family expanded numerically");
        for (const auto& rb : numeric_roots(fam.modulus, opt.precision)) {
            SolutionFamily nf = fam;
            nf.kind = FamilyKind::Numeric;
            nf.root = rb.ball;
            nf.modulus = UniPoly();
            out.push_back(std::move(nf));
        }
    }
    return out;
}

inline void start_report(AnalysisReport& rep, std::string command, std::string_view text, const Rational& x0,
                         const AnalyzeOptions& opt) {
    rep.command = std::move(command);
    rep.input = std::string(text);
    rep.equation = parse_equation(text);
    rep.x0 = x0;
    rep.options = option_list(opt);
    rep.singular = equation_singular_points(rep.equation, opt.precision);
    rep.x0_singular = is_singular_point(rep.equation, x0);
}

}  // namespace detail

/// The full pipeline: singular points and Sigma, polygon, characteristic polynomials, families, series.
inline AnalysisReport analyze(std::string_view text, const Rational& x0, const AnalyzeOptions& opt = {}) {
    AnalysisReport rep;
    detail::start_report(rep, "analyze", text, x0, opt);
    const DiffPoly& f = rep.equation;
    if (opt.sigma && f.depends_on_dy()) rep.sigma = analyze_sigma(f, opt.precision);
    else if (opt.sigma) rep.warnings.push_back("F does not involve y': Sigma analysis skipped");

    if (rep.x0_singular && opt.polygon == PolygonKind::Petrovic) {
        if (!opt.force) {
            rep.stopped = "x0 = " + to_string(x0) +
                          " is a singular point of the equation (a coefficient vanishes there); "
                          "polygon analysis skipped, use --force to override";
            return rep;
        }
        rep.warnings.push_back("x0 is a singular point; analysis forced, Theorem 1 expansions are not available");
    }

    rep.polygon = build_polygon(f, x0, opt.polygon);
    if (rep.polygon->collinear) rep.warnings.push_back("support is collinear: treated as a single edge");

    std::vector<UniPoly> edge_poly;
    for (const auto& e : rep.polygon->inclined) {
        EdgeReport er;
        er.edge = e;
        er.characteristic = characteristic_poly(e, f, x0, opt.polygon, opt.force);
        if (!er.characteristic.collapsed) {
            auto fams = enumerate_families(er.characteristic.poly, e, opt.mode, opt.precision);
            er.orbit_classes = fams.orbit_classes;
            er.orbit_method = fams.orbit_method;
            for (auto& fam : detail::with_fallback(fams.families, opt, rep.warnings))
                rep.families.push_back({rep.edges.size(), std::move(fam), "", {}});
        }
        edge_poly.push_back(er.characteristic.poly);
        rep.edges.push_back(std::move(er));
    }

    if (opt.family && *opt.family >= rep.families.size())
        throw UnsupportedRequest("family " + std::to_string(*opt.family) + " does not exist; " +
                                 std::to_string(rep.families.size()) + " families found");

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < rep.families.size(); ++i)
        if (!opt.family || *opt.family == i) todo.push_back(i);

    std::vector<detail::FamilyOutcome> outcomes(rep.families.size());
    const std::size_t jobs = std::max(1u, opt.jobs);
    for (std::size_t start = 0; start < todo.size(); start += jobs) {
        std::vector<std::future<detail::FamilyOutcome>> running;
        const std::size_t end = std::min(todo.size(), start + jobs);
        for (std::size_t j = start; j < end; ++j) {
            const auto& fr = rep.families[todo[j]];
            running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, detail::run_family,
                                         std::cref(f), std::cref(x0), std::cref(fr.family), todo[j],
                                         std::cref(edge_poly[fr.edge]), std::cref(opt)));
        }
        for (std::size_t j = start; j < end; ++j) outcomes[todo[j]] = running[j - start].get();
    }
    for (std::size_t i = 0; i < rep.families.size(); ++i) {
        if (std::find(todo.begin(), todo.end(), i) == todo.end()) {
            rep.families[i].status = "not selected";
            continue;
        }
        rep.families[i].status = outcomes[i].status;
        rep.families[i].notes = outcomes[i].notes;
        for (auto& sr : outcomes[i].series) rep.series.push_back(std::move(sr));
    }
    return rep;
}

struct SolveOptions {
    AnalyzeOptions analyze;
    std::optional<std::string> ansatz;  ///< seed literal; skips the polygon
    long ram = 1;
    std::optional<Rational> free_from;
};

/// Series only: either the polygon families (exceptional ones need explore) or a seeded ansatz.
inline AnalysisReport solve(std::string_view text, const Rational& x0, SolveOptions opt) {
    opt.analyze.sigma = false;
    if (!opt.ansatz) {
        AnalysisReport rep = analyze(text, x0, opt.analyze);
        rep.command = "solve";
        if (opt.analyze.family && !opt.analyze.explore && rep.families.at(*opt.analyze.family).family.exceptional)
            throw UnsupportedRequest("family " + std::to_string(*opt.analyze.family) +
                                     " is exceptional (multiple root of P) and Theorem 1 does not apply; rerun with "
                                     "--explore to search ramified continuations, or give a seed with --ansatz");
        return rep;
    }
    AnalysisReport rep;
    detail::start_report(rep, "solve", text, x0, opt.analyze);
    rep.options.emplace_back("ansatz", *opt.ansatz);
    rep.options.emplace_back("ram", std::to_string(opt.ram));
    if (opt.ram < 1) throw UnsupportedRequest("--ram must be positive");
    AnsatzSeed seed{parse_series_literal(*opt.ansatz, x0), opt.ram, opt.free_from};
    if (seed.terms.empty()) throw UnsupportedRequest("the ansatz seed is zero");
    const auto res = continue_ansatz(rep.equation, x0, seed, opt.analyze.terms);
    SeriesReport sr;
    sr.source = "ansatz";
    sr.series = res.series;
    sr.heuristic = true;
    sr.status = to_string(res.status);
    sr.steps = res.steps;
    if (!res.message.empty()) sr.notes.push_back(res.message);
    if (res.status == AnsatzStatus::Branching) {
        std::string roots;
        for (const auto& z : res.branch_roots) roots += (roots.empty() ? "" : ", ") + to_string(z);
        sr.notes.push_back("rational roots of the balance polynomial: " + (roots.empty() ? "none" : roots));
    }
    sr.verification = detail::check_series(rep.equation, res.series, res.series.truncation_order());
    sr.diagnostics = detail::diagnose(sr, opt.analyze.precision);
    rep.series.push_back(std::move(sr));
    return rep;
}

/// Default verification target: the top exponent of the literal (1 for the zero series).
inline Rational default_target(const TruncatedSeries<Rational>& s) {
    return s.zero_series() ? Rational(1) : s.truncation_order();
}

inline AnalysisReport verify(std::string_view text, std::string_view literal, const Rational& x0,
                             std::optional<Rational> target = std::nullopt, unsigned precision = 256) {
    AnalysisReport rep;
    AnalyzeOptions opt;
    opt.precision = precision;
    detail::start_report(rep, "verify", text, x0, opt);
    rep.options = {{"series", std::string(literal)}};
    const auto phi = from_exponent_map(parse_series_literal(literal, x0), x0);
    const Rational t = target ? *target : default_target(phi);
    rep.options.emplace_back("target", to_string(t));
    SeriesReport sr;
    sr.source = "literal";
    sr.series = phi;
    sr.status = "given";
    sr.verification = detail::check_series(rep.equation, phi, t);
    rep.series.push_back(std::move(sr));
    return rep;
}

}  // namespace puiseux
