#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "puiseux/report/report.hpp"

namespace puiseux {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json rat_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Json ball_json(const ComplexBall& b) {
    return Json{{"mid_re", b.mid_re().to_string()}, {"mid_im", b.mid_im().to_string()}, {"rad", b.rad().to_string(0, MPFR_RNDU)}};
}

inline Json rats_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rat_json(q));
    return out;
}

inline Json poly_json(const UniPoly& p, const std::string& var) {
    return Json{{"coefficients", rats_json(p.coeffs())}, {"text", p.to_string(var)}};
}

inline Json point_set_json(const PointSet& s) {
    Json numeric = Json::array();
    for (const auto& b : s.numeric) numeric.push_back(ball_json(b));
    return Json{{"everywhere", s.everywhere}, {"exact", rats_json(s.exact)}, {"numeric", numeric}};
}

inline Json support_json(const SupportPoint& p) {
    return Json{{"M", p.M}, {"N", p.N}, {"p", p.key.p}, {"q", p.key.q}};
}

inline Json edge_json(const PolygonEdge& e) {
    Json members = Json::array();
    for (const auto& m : e.members) members.push_back(support_json(m));
    return Json{{"left", support_json(e.left)},
                {"right", support_json(e.right)},
                {"lambda", rat_json(e.lambda)},
                {"gamma", rat_json(e.gamma)},
                {"members", members}};
}

inline Json check_json(const CandidateCheck& c) {
    Json w = nullptr;
    if (c.witness) w = Json{{"y", rat_json(c.witness->first)}, {"dy", rat_json(c.witness->second)}};
    return Json{{"x0", rat_json(c.x0)},
                {"status", to_string(c.status)},
                {"witness", w},
                {"on_curve", c.on_curve},
                {"note", c.note}};
}

inline Json sigma_json(const SigmaReport& s) {
    Json out;
    out["leading_degeneracy"] = point_set_json(s.bullets.leading_degeneracy);
    out["common_root"] = Json{{"candidates", point_set_json(s.bullets.common_root)},
                              {"verified", rats_json(s.bullets.common_root_verified)}};
    out["inverted_common_root"] = point_set_json(s.bullets.inverted_common_root);
    if (!s.picard) {
        out["picard"] = nullptr;
        return out;
    }
    const auto& p = *s.picard;
    Json checks = Json::array();
    for (const auto& c : p.checks) checks.push_back(check_json(c));
    out["picard"] = Json{{"status", p.identically_zero() ? "identically zero" : "finite"},
                         {"eliminant", p.eliminant ? poly_json(*p.eliminant, "x") : Json(nullptr)},
                         {"shared_factor", p.shared_factor ? Json(p.shared_factor->to_string("y")) : Json(nullptr)},
                         {"shared_note", p.shared_note},
                         {"candidates", point_set_json(p.candidates)},
                         {"checks", checks},
                         {"verified", rats_json(p.verified)},
                         {"additional", rats_json(p.additional)}};
    return out;
}

inline Json coeff_json(const Rational& q) { return rat_json(q); }
inline Json coeff_json(const ComplexBall& b) { return ball_json(b); }
inline Json coeff_json(const NumberFieldElem& a) { return Json{{"field", rats_json(a.rep().coeffs())}}; }

inline std::string domain_name(const AnySeries& s) {
    switch (s.index()) {
        case 0: return "rational";
        case 1: return "number-field";
        default: return "ball";
    }
}

inline Json series_json(const SeriesReport& sr, std::size_t index) {
    Json out;
    out["index"] = index;
    out["family"] = sr.family ? Json(*sr.family) : Json(nullptr);
    out["source"] = sr.source;
    out["heuristic"] = sr.heuristic;
    out["status"] = sr.status;
    out["domain"] = domain_name(sr.series);
    out["modulus"] = sr.modulus ? poly_json(*sr.modulus, "c") : Json(nullptr);
    std::visit(
        [&](const auto& s) {
            out["x0"] = rat_json(s.x0);
            out["s"] = s.s;
            out["r"] = s.r;
            Json terms = Json::array();
            for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
                if (is_zero(s.coeffs[k])) continue;
                terms.push_back(Json{{"exponent", Json{{"r", s.r}, {"s", s.s}, {"k", static_cast<long>(k)}}},
                                     {"coeff", coeff_json(s.coeffs[k])}});
            }
            out["terms"] = terms;
        },
        sr.series);
    Json steps = Json::array();
    for (const auto& st : sr.steps)
        steps.push_back(Json{{"t_exponent", st.t_exponent},
                             {"chosen", rat_json(st.chosen)},
                             {"alternatives", rats_json(st.alternatives)},
                             {"rule", st.rule}});
    out["steps"] = steps;
    out["notes"] = sr.notes;
    return out;
}

inline Json verification_json(const VerificationEntry& v, std::size_t series) {
    return Json{{"series", series},
                {"target", rat_json(v.target)},
                {"identically_zero", v.check.identically_zero},
                {"order", v.check.order ? rat_json(*v.check.order) : Json(nullptr)},
                {"known_zero_below", rat_json(v.check.known_zero_below)},
                {"pass", v.check.meets_target},
                {"summary", v.check.describe()}};
}

inline Json diagnostics_json(const DiagnosticsEntry& d, std::size_t series) {
    const auto& p = d.profile;
    return Json{{"series", series},
                {"conjugate", d.conjugate ? ball_json(*d.conjugate) : Json(nullptr)},
                {"heuristic", true},
                {"verdict", to_string(d.verdict.kind)},
                {"sigma", d.verdict.sigma ? Json(*d.verdict.sigma) : Json(nullptr)},
                {"radius", d.verdict.radius ? Json(*d.verdict.radius) : Json(nullptr)},
                {"rationale", d.verdict.rationale},
                {"samples", p.index.size()},
                {"fit", Json{{"sigma", p.sigma},
                             {"rho", p.rho},
                             {"residual", p.residual},
                             {"envelope_sigma", p.envelope_sigma},
                             {"tail_sigma", p.tail_sigma},
                             {"tail_envelope_sigma", p.tail_envelope_sigma}}}};
}

}  // namespace detail

inline Json to_json(const AnalysisReport& rep) {
    using namespace detail;
    Json out;
    Json terms = Json::array();
    for (const auto& [k, a] : rep.equation.terms())
        terms.push_back(Json{{"p", k.p}, {"q", k.q}, {"a", rats_json(a.coeffs())}});
    out["equation"] = Json{{"input", rep.input}, {"canonical", rep.equation.to_string()}, {"terms", terms}};
    out["x0"] = rat_json(rep.x0);
    out["singular_points"] = Json{{"points", point_set_json(rep.singular.points)},
                                  {"content", point_set_json(rep.singular.content_points)},
                                  {"x0_singular", rep.x0_singular},
                                  {"stopped", rep.stopped ? Json(*rep.stopped) : Json(nullptr)}};
    out["sigma"] = rep.sigma ? sigma_json(*rep.sigma) : Json(nullptr);

    if (rep.polygon) {
        const auto& poly = *rep.polygon;
        Json pts = Json::array(), verts = Json::array(), hor = Json::array(), ver = Json::array();
        for (const auto& p : poly.points) pts.push_back(support_json(p));
        for (const auto& p : poly.vertices) verts.push_back(support_json(p));
        for (const auto& e : poly.horizontal) hor.push_back(edge_json(e));
        for (const auto& e : poly.vertical) ver.push_back(edge_json(e));
        out["polygon"] = Json{{"kind", to_string(poly.kind)},
                              {"points", pts},
                              {"vertices", verts},
                              {"horizontal", hor},
                              {"vertical", ver},
                              {"collinear", poly.collinear}};
    } else {
        out["polygon"] = nullptr;
    }

    Json edges = Json::array();
    for (std::size_t i = 0; i < rep.edges.size(); ++i) {
        const auto& er = rep.edges[i];
        Json e = edge_json(er.edge);
        e["index"] = i;
        e["characteristic"] = Json{{"poly", poly_json(er.characteristic.poly, "c")},
                                   {"symbolic", symbolic_to_string(er.characteristic.symbolic)},
                                   {"collapsed", er.characteristic.collapsed},
                                   {"note", er.characteristic.note}};
        e["orbit_classes"] = er.orbit_classes;
        e["orbit_method"] = er.orbit_method;
        edges.push_back(e);
    }
    out["edges"] = edges;

    Json fams = Json::array();
    for (std::size_t i = 0; i < rep.families.size(); ++i) {
        const auto& fr = rep.families[i];
        const auto& fam = fr.family;
        const auto root = fam.rational_root();
        std::string kind = fam.kind == FamilyKind::Numeric ? "numeric" : (root ? "rational" : "algebraic");
        fams.push_back(Json{{"index", i},
                            {"edge", fr.edge},
                            {"kind", kind},
                            {"root", root ? rat_json(*root) : Json(nullptr)},
                            {"modulus", fam.kind == FamilyKind::Exact ? poly_json(fam.modulus, "c") : Json(nullptr)},
                            {"ball", fam.root ? ball_json(*fam.root) : Json(nullptr)},
                            {"multiplicity", fam.multiplicity},
                            {"exceptional", fam.exceptional},
                            {"orbit_class", fam.orbit_class_id},
                            {"status", fr.status},
                            {"notes", fr.notes}});
    }
    out["families"] = fams;

    Json series = Json::array(), verification = Json::array(), diagnostics = Json::array();
    for (std::size_t i = 0; i < rep.series.size(); ++i) {
        const auto& sr = rep.series[i];
        series.push_back(series_json(sr, i));
        if (sr.verification) verification.push_back(verification_json(*sr.verification, i));
        for (const auto& d : sr.diagnostics) diagnostics.push_back(diagnostics_json(d, i));
    }
    out["series"] = series;
    out["verification"] = verification;
    out["diagnostics"] = diagnostics;

    Json opts;
    for (const auto& [k, v] : rep.options) opts[k] = v;
    out["meta"] = Json{{"tool", kToolName},
                       {"version", kToolVersion},
                       {"command", rep.command},
                       {"options", opts},
                       {"warnings", rep.warnings}};
    return out;
}

/// Inverse of the rational encoding.
inline Rational rational_from_json(const Json& j) {
    return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

/// Rebuilds F from the "equation" block.
inline DiffPoly equation_from_json(const Json& j) {
    DiffPoly::TermMap terms;
    for (const auto& t : j.at("terms")) {
        std::vector<Rational> cs;
        for (const auto& c : t.at("a")) cs.push_back(rational_from_json(c));
        terms[TermKey{t.at("p").get<unsigned>(), t.at("q").get<unsigned>()}] = UniPoly(std::move(cs));
    }
    return DiffPoly(std::move(terms));
}

namespace detail {

inline std::string real_text(const Real& r, int digits) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, r.get());
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

/// "a + bi +/- r" with %g style parts; the imaginary part is dropped when the ball touches the real axis.
inline std::string ball_text(const ComplexBall& b, int digits) {
    std::string out = real_text(b.mid_re(), digits);
    if (mpfr_cmpabs(b.mid_im().get(), b.rad().get()) > 0) {
        std::string im = real_text(b.mid_im(), digits);
        out += im[0] == '-' ? " - " + im.substr(1) + "i" : " + " + im + "i";
    }
    return "[" + out + " +/- " + real_text(b.rad(), 2) + "]";
}

inline std::string point_set_text(const PointSet& s) {
    if (s.everywhere) return "every x";
    if (s.empty()) return "none";
    std::string out;
    for (const auto& q : s.exact) out += (out.empty() ? "" : ", ") + to_string(q);
    for (const auto& b : s.numeric) out += (out.empty() ? "" : ", ") + ball_text(b, 12);
    return out;
}

inline std::string rats_text(const std::vector<Rational>& v) {
    if (v.empty()) return "none";
    std::string out;
    for (const auto& q : v) out += (out.empty() ? "" : ", ") + to_string(q);
    return out;
}

inline std::string term_coeff_text(const Rational& q) { return to_string(q); }
inline std::string term_coeff_text(const ComplexBall& b) { return ball_text(b, 15); }
inline std::string term_coeff_text(const NumberFieldElem& a) { return "(" + a.rep().to_string("c") + ")"; }

inline std::string exponent_text(const Rational& e) {
    return is_integer(e) ? to_string(e) : "(" + to_string(e) + ")";
}

template <class T>
std::string series_text(const TruncatedSeries<T>& s, std::size_t max_terms = 8) {
    if (s.zero_series()) return "0";
    const std::string var = s.x0 == 0 ? "x" : "(x - " + to_string(s.x0) + ")";
    std::string out;
    std::size_t shown = 0, nonzero = 0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
        if (is_zero(s.coeffs[k])) continue;
        ++nonzero;
        if (shown == max_terms) continue;
        ++shown;
        const Rational e = s.exponent(static_cast<long>(k));
        std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + exponent_text(e));
        std::string c = term_coeff_text(s.coeffs[k]);
        std::string term = mono.empty() ? c : (c == "1" ? mono : (c == "-1" ? "-" + mono : c + "*" + mono));
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    if (nonzero > shown) out += " + ... (" + std::to_string(nonzero - shown) + " more)";
    return out + " + O(" + var + "^" + exponent_text(s.exponent(s.corrections() + 1)) + ")";
}

}  // namespace detail

inline std::string to_text(const AnalysisReport& rep) {
    using namespace detail;
    std::ostringstream os;
    os << "equation: " << rep.equation.to_string() << " = 0\n";
    os << "x0 = " << to_string(rep.x0) << (rep.x0_singular ? " (singular point)" : " (nonsingular)") << "\n";
    os << "singular points: " << point_set_text(rep.singular.points) << "\n";
    if (!rep.singular.content_points.empty())
        os << "  removable with the x-content: " << point_set_text(rep.singular.content_points) << "\n";
    if (rep.sigma) {
        const auto& s = *rep.sigma;
        os << "Sigma candidates:\n";
        os << "  leading coefficient degenerate: " << point_set_text(s.bullets.leading_degeneracy) << "\n";
        os << "  coefficients share a root: " << point_set_text(s.bullets.common_root)
           << " (verified: " << rats_text(s.bullets.common_root_verified) << ")\n";
        os << "  inverted equation at y = infinity: " << point_set_text(s.bullets.inverted_common_root) << "\n";
        if (s.picard) {
            const auto& p = *s.picard;
            if (p.identically_zero()) {
                os << "  Picard eliminant: identically zero (compatible on a curve)";
                if (!p.shared_note.empty()) os << "; " << p.shared_note;
                os << "\n";
                for (const auto& c : p.checks) os << "    spot check x = " << to_string(c.x0) << ": " << to_string(c.status) << "\n";
            } else {
                os << "  Picard eliminant: " << p.eliminant->to_string("x") << "\n";
                if (!p.shared_note.empty()) os << "    " << p.shared_note << "\n";
                os << "    candidates: " << point_set_text(p.candidates) << "\n";
                os << "    verified: " << rats_text(p.verified) << "; beyond the singular points: " << rats_text(p.additional)
                   << "\n";
            }
        }
    }
    if (rep.stopped) os << "stopped: " << *rep.stopped << "\n";
    if (rep.polygon) {
        const auto& poly = *rep.polygon;
        os << to_string(poly.kind) << " polygon, vertices:";
        for (const auto& v : poly.vertices) os << " (" << v.M << "," << v.N << ")";
        os << "\n";
        if (poly.inclined.empty()) os << "  no inclined edges\n";
    }
    for (std::size_t i = 0; i < rep.edges.size(); ++i) {
        const auto& er = rep.edges[i];
        os << "edge " << i << ": (" << er.edge.left.M << "," << er.edge.left.N << ")-(" << er.edge.right.M << ","
           << er.edge.right.N << "), lambda = " << to_string(er.edge.lambda) << ", gamma = " << to_string(er.edge.gamma)
           << "\n";
        if (er.characteristic.collapsed) {
            os << "  " << er.characteristic.note << "\n";
            continue;
        }
        os << "  P(c) = " << er.characteristic.poly.to_string("c") << "   [" << symbolic_to_string(er.characteristic.symbolic)
           << "]\n";
        os << "  orbit classes: " << er.orbit_classes << " (" << er.orbit_method << ")\n";
    }
    for (std::size_t i = 0; i < rep.families.size(); ++i) {
        const auto& fr = rep.families[i];
        const auto& fam = fr.family;
        os << "family " << i << " (edge " << fr.edge << "): ";
        if (auto r = fam.rational_root()) os << "c = " << to_string(*r);
        else if (fam.root) os << "c = " << ball_text(*fam.root, 15);
        else os << "root of " << fam.modulus.to_string("c");
        if (fam.multiplicity > 1) os << ", multiplicity " << fam.multiplicity;
        os << ", orbit class " << fam.orbit_class_id << ": " << fr.status << "\n";
        for (const auto& n : fr.notes) os << "  note: " << n << "\n";
    }
    for (std::size_t i = 0; i < rep.series.size(); ++i) {
        const auto& sr = rep.series[i];
        os << "series " << i << " [" << sr.source;
        if (sr.family) os << ", family " << *sr.family;
        if (sr.heuristic) os << ", heuristic";
        os << "]: " << sr.status << "\n";
        if (sr.modulus) os << "  over Q[c]/(" << sr.modulus->to_string("c") << ")\n";
        os << "  y = " << std::visit([](const auto& s) { return series_text(s); }, sr.series) << "\n";
        for (const auto& n : sr.notes) os << "  note: " << n << "\n";
        if (sr.verification)
            os << "  residual: " << sr.verification->check.describe() << ", target " << to_string(sr.verification->target)
               << ": " << (sr.verification->check.meets_target ? "pass" : "fail") << "\n";
        for (const auto& d : sr.diagnostics) {
            os << "  growth (heuristic)";
            if (d.conjugate) os << " at c = " << ball_text(*d.conjugate, 8);
            os << ": " << to_string(d.verdict.kind);
            if (d.verdict.radius) os << ", radius ~ " << *d.verdict.radius;
            if (d.verdict.kind == VerdictKind::DivergentGevrey && d.verdict.sigma) os << ", Gevrey order ~ " << *d.verdict.sigma;
            os << "\n";
        }
    }
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    return os.str();
}

}  // namespace puiseux
