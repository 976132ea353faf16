#include <gtest/gtest.h>

#include "puiseux/report/render.hpp"
#include "test_util.hpp"

using namespace puiseux;
using testutil::q;

namespace {

const char* kEx1 = "y'^3 - (y - x^4)^2";
const char* kEx2 = "-2y^3 y'^3 - y^2 y'^2 + y - (x^3 + 1)";
const char* kEx3 = "(y'-1)^2 - 9x";
const char* kEx4 = "y'^2 + 2y' - y + (1 - x + x^3)";
const char* kEuler = "x^2 y' - y + x";

std::map<Rational, Rational> terms_of(const AnySeries& s) {
    const auto& ts = std::get<TruncatedSeries<Rational>>(s);
    std::map<Rational, Rational> out;
    for (std::size_t k = 0; k < ts.coeffs.size(); ++k)
        if (!is_zero(ts.coeffs[k])) out[ts.exponent(static_cast<long>(k))] = ts.coeffs[k];
    return out;
}

AnalyzeOptions quick(long terms = 8) {
    AnalyzeOptions o;
    o.terms = terms;
    return o;
}

}  // namespace

TEST(Report, ExampleTwoNarrative) {
    auto rep = analyze(kEx2, 0, quick(16));
    EXPECT_FALSE(rep.x0_singular);
    EXPECT_FALSE(rep.stopped);
    ASSERT_EQ(rep.edges.size(), 1u);
    EXPECT_EQ(rep.edges[0].edge.lambda, q(1, 2));
    EXPECT_EQ(rep.edges[0].characteristic.poly, testutil::poly({-1, 0, 0, 0, q(-1, 4), 0, q(-1, 4)}));
    EXPECT_EQ(rep.edges[0].orbit_classes, 3);
    ASSERT_FALSE(rep.series.empty());
    std::size_t verdicts = 0;
    for (const auto& sr : rep.series) {
        ASSERT_TRUE(sr.verification);
        EXPECT_TRUE(sr.verification->check.meets_target);
        for (const auto& d : sr.diagnostics) {
            EXPECT_EQ(d.verdict.kind, VerdictKind::ConvergentConsistent) << d.verdict.rationale;
            ++verdicts;
        }
    }
    EXPECT_EQ(verdicts, 6u);
}

TEST(Report, SingularBasePointStops) {
    auto rep = analyze(kEx1, 0, quick());
    EXPECT_TRUE(rep.x0_singular);
    ASSERT_TRUE(rep.stopped);
    EXPECT_NE(rep.stopped->find("singular point of the equation"), std::string::npos);
    EXPECT_FALSE(rep.polygon);
    EXPECT_TRUE(rep.families.empty());
    ASSERT_TRUE(rep.sigma);
    EXPECT_TRUE(rep.sigma->picard->identically_zero());

    AnalyzeOptions forced = quick();
    forced.force = true;
    auto f = analyze(kEx1, 0, forced);
    EXPECT_FALSE(f.stopped);
    ASSERT_TRUE(f.polygon);
    ASSERT_EQ(f.edges.size(), 1u);
    EXPECT_TRUE(f.edges[0].characteristic.collapsed);
    EXPECT_NE(to_text(f).find("collapses"), std::string::npos);
}

TEST(Report, ExampleThreeExplorerCandidate) {
    auto rep = analyze(kEx3, 0, quick());
    ASSERT_EQ(rep.families.size(), 1u);
    EXPECT_TRUE(rep.families[0].family.exceptional);
    EXPECT_EQ(rep.families[0].family.multiplicity, 2u);
    EXPECT_EQ(rep.edges[0].characteristic.poly, testutil::poly({1, -2, 1}));
    ASSERT_EQ(rep.series.size(), 1u);
    const auto& sr = rep.series[0];
    EXPECT_EQ(sr.source, "explore");
    EXPECT_TRUE(sr.heuristic);
    EXPECT_TRUE(sr.verification->check.identically_zero);
    EXPECT_EQ(terms_of(sr.series), (std::map<Rational, Rational>{{1, 1}, {q(3, 2), 2}}));
}

TEST(Report, ExceptionalFamilyNeedsExplore) {
    SolveOptions opt;
    opt.analyze = quick();
    opt.analyze.family = 0;
    opt.analyze.explore = false;
    EXPECT_THROW(solve(kEx3, 0, opt), UnsupportedRequest);
    opt.analyze.explore = true;
    auto rep = solve(kEx3, 0, opt);
    EXPECT_EQ(rep.series.size(), 1u);
    EXPECT_FALSE(rep.sigma);
    opt.analyze.family = 5;
    EXPECT_THROW(solve(kEx3, 0, opt), UnsupportedRequest);
}

TEST(Report, AnsatzSeeds) {
    SolveOptions opt;
    opt.analyze = quick(5);
    opt.ansatz = "-x";
    auto ex4 = solve(kEx4, 0, opt);
    ASSERT_EQ(ex4.series.size(), 1u);
    EXPECT_EQ(terms_of(ex4.series[0].series),
              (std::map<Rational, Rational>{{1, -1}, {3, 1}, {4, 9}, {5, 216}, {6, 7776}}));

    opt.ansatz = "x";
    opt.analyze.terms = 8;
    auto euler = solve(kEuler, 0, opt);
    auto t = terms_of(euler.series[0].series);
    Rational fact = 1;
    for (long k = 0; k <= 8; ++k) {
        if (k > 0) fact *= k;
        EXPECT_EQ(t.at(Rational(k + 1)), fact);
    }
    EXPECT_TRUE(euler.series[0].heuristic);
}

TEST(Report, VerifyExamples) {
    auto ex3 = verify(kEx3, "x + 2*x^(3/2)", 0);
    EXPECT_TRUE(ex3.series[0].verification->check.identically_zero);
    EXPECT_TRUE(ex3.series[0].verification->check.meets_target);
    auto ex1 = verify(kEx1, "x^4 + 8x^(9/2) + 108x^5 + 1863x^(11/2) + 37665x^6", 0);
    ASSERT_TRUE(ex1.series[0].verification->check.order);
    EXPECT_TRUE(ex1.series[0].verification->check.meets_target);
    auto zero = verify("x y' - 1", "0", 0);
    EXPECT_EQ(*zero.series[0].verification->check.order, 0);
    EXPECT_FALSE(zero.series[0].verification->check.meets_target);
}

TEST(Report, FallsBackToBallsAboveFieldDegree) {
    AnalyzeOptions o = quick(6);
    o.max_field_degree = 4;
    o.sigma = false;
    auto rep = analyze(kEx2, 0, o);
    ASSERT_EQ(rep.families.size(), 6u);
    for (const auto& fr : rep.families) EXPECT_EQ(fr.family.kind, FamilyKind::Numeric);
    ASSERT_FALSE(rep.warnings.empty());
    for (const auto& sr : rep.series) EXPECT_EQ(sr.series.index(), 2u);
}

TEST(Report, NumericModeOrbitClasses) {
    AnalyzeOptions o = quick(6);
    o.mode = FamilyKind::Numeric;
    o.sigma = false;
    auto rep = analyze(kEx2, 0, o);
    EXPECT_EQ(rep.families.size(), 6u);
    EXPECT_EQ(rep.edges[0].orbit_classes, 3);
}

TEST(Json, TopLevelKeysInOrder) {
    auto j = to_json(analyze(kEx3, 0, quick()));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"equation", "x0", "singular_points", "sigma", "polygon", "edges", "families",
                                              "series", "verification", "diagnostics", "meta"}));
}

TEST(Json, ByteStableAndIndependentOfJobs) {
    AnalyzeOptions o = quick(10);
    o.sigma = false;
    const std::string a = to_json(analyze(kEx2, 0, o)).dump();
    EXPECT_EQ(to_json(analyze(kEx2, 0, o)).dump(), a);
    o.jobs = 4;
    auto j = to_json(analyze(kEx2, 0, o));
    j["meta"]["options"]["jobs"] = "1";
    EXPECT_EQ(j.dump(), a);
}

TEST(Json, ExactValuesRoundTrip) {
    const Rational x0 = q(-7, 3);
    auto rep = analyze("y' - y^2 - x", x0, quick(6));
    ASSERT_EQ(rep.series.size(), 2u);
    const auto j = Json::parse(to_json(rep).dump());
    EXPECT_EQ(rational_from_json(j["x0"]), x0);
    EXPECT_EQ(equation_from_json(j["equation"]), rep.equation);
    for (std::size_t i = 0; i < rep.edges.size(); ++i) {
        EXPECT_EQ(rational_from_json(j["edges"][i]["lambda"]), rep.edges[i].edge.lambda);
        EXPECT_EQ(rational_from_json(j["edges"][i]["gamma"]), rep.edges[i].edge.gamma);
    }
    for (std::size_t i = 0; i < rep.series.size(); ++i) {
        const auto& js = j["series"][i];
        std::map<Rational, Rational> parsed;
        for (const auto& t : js["terms"]) {
            const auto& e = t["exponent"];
            parsed[make_rational(e["r"].get<long>() + e["k"].get<long>(), e["s"].get<long>())] = rational_from_json(t["coeff"]);
        }
        EXPECT_EQ(parsed, terms_of(rep.series[i].series));
    }
    for (std::size_t i = 0; i < rep.series.size(); ++i)
        EXPECT_EQ(rational_from_json(j["verification"][i]["order"]), *rep.series[i].verification->check.order);
}

TEST(Json, HeuristicMarkers) {
    auto j = to_json(analyze(kEx4, 0, quick(12)));
    ASSERT_FALSE(j["diagnostics"].empty());
    for (const auto& d : j["diagnostics"]) EXPECT_TRUE(d["heuristic"].get<bool>());
    for (const auto& s : j["series"]) {
        if (s["source"] != "theorem1") {
            EXPECT_TRUE(s["heuristic"].get<bool>());
        }
    }
}

TEST(Text, SameContentAsJson) {
    auto rep = analyze(kEx2, 0, quick(10));
    const auto j = to_json(rep);
    const std::string text = to_text(rep);
    EXPECT_NE(text.find(j["edges"][0]["characteristic"]["poly"]["text"].get<std::string>()), std::string::npos);
    for (const auto& d : j["diagnostics"]) EXPECT_NE(text.find(d["verdict"].get<std::string>()), std::string::npos);
    for (const auto& v : j["verification"]) EXPECT_NE(text.find(v["summary"].get<std::string>()), std::string::npos);
    EXPECT_NE(text.find("orbit classes: 3"), std::string::npos);
}
