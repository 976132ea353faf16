#include <gtest/gtest.h>

#include <random>
#include <set>

#include "puiseux/model/parser.hpp"
#include "puiseux/polygon/characteristic.hpp"
#include "test_util.hpp"

using namespace puiseux;
using testutil::poly;
using testutil::q;

namespace {

const char* kEx1 = "y'^3 - (y - x^4)^2";
const char* kEx2 = "-2y^3 y'^3 - y^2 y'^2 + y - (x^3 + 1)";
const char* kEx3 = "(y'-1)^2 - 9x";
const char* kEx4 = "y'^2 + 2y' - y + (1 - x + x^3)";

std::set<std::pair<long, long>> points_of(const std::vector<SupportPoint>& pts) {
    std::set<std::pair<long, long>> out;
    for (const auto& p : pts) out.insert({p.M, p.N});
    return out;
}

PolygonEdge only_edge(const char* eq, const Rational& x0 = 0) {
    Polygon p = build_polygon(parse_equation(eq), x0);
    EXPECT_EQ(p.inclined.size(), 1u);
    return p.inclined.at(0);
}

}  // namespace

TEST(Support, Examples) {
    EXPECT_EQ(points_of(support(parse_equation(kEx1))), (std::set<std::pair<long, long>>{{0, 0}, {1, 0}, {2, 0}, {3, 3}}));
    EXPECT_EQ(points_of(support(parse_equation(kEx2))), (std::set<std::pair<long, long>>{{0, 0}, {1, 0}, {4, 2}, {6, 3}}));
    EXPECT_EQ(points_of(support(DiffPoly::y())), (std::set<std::pair<long, long>>{{1, 0}}));
}

TEST(Hull, ExampleOne) {
    PolygonEdge e = only_edge(kEx1, 1);
    EXPECT_EQ(e.left.M, 0);
    EXPECT_EQ(e.right.M, 3);
    EXPECT_EQ(e.right.N, 3);
    EXPECT_EQ(e.lambda, 1);
    EXPECT_EQ(e.gamma, 0);
}

TEST(Hull, ExampleTwoMembers) {
    PolygonEdge e = only_edge(kEx2);
    EXPECT_EQ(e.lambda, q(1, 2));
    EXPECT_EQ(e.r(), 1);
    EXPECT_EQ(e.s(), 2);
    EXPECT_EQ(points_of(e.members), (std::set<std::pair<long, long>>{{0, 0}, {4, 2}, {6, 3}}));
}

TEST(Hull, SinglePointHasNoEdges) {
    Polygon p = build_polygon(DiffPoly::constant(poly({1})), 0);
    EXPECT_TRUE(p.inclined.empty());
    EXPECT_EQ(p.vertices.size(), 1u);
}

TEST(Hull, DescendingEdgeHasNegativeSlope) {
    // y' = y^2 has the movable pole -1/(x - x0).
    DiffPoly f = parse_equation("y' - y^2");
    PolygonEdge e = only_edge("y' - y^2", 3);
    EXPECT_EQ(e.lambda, -1);
    auto cp = characteristic_poly(e, f, 3);
    auto fams = enumerate_families(cp.poly, e, FamilyKind::Exact);
    ASSERT_EQ(fams.families.size(), 1u);
    EXPECT_EQ(*fams.families[0].rational_root(), -1);
}

TEST(Hull, HorizontalAndVerticalReportedSeparately) {
    Polygon p = build_polygon(parse_equation("y^2 - x^3"), 1);
    EXPECT_TRUE(p.inclined.empty());
    EXPECT_EQ(p.horizontal.size(), 1u);
    Polygon v = build_polygon(parse_equation("y' + y + 1"), 1);
    EXPECT_EQ(v.vertical.size(), 1u);
    EXPECT_EQ(v.inclined.size(), 1u);
}

TEST(Hull, CollinearFlag) {
    EXPECT_FALSE(build_polygon(parse_equation(kEx4), 0).collinear);
    EXPECT_TRUE(build_polygon(parse_equation("y'^2 + y' + 1"), 0).collinear);
}

TEST(Hull, PointsBelowEdgesAndUnderHull) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(0, 4), c(-3, 3);
    for (int trial = 0; trial < 300; ++trial) {
        DiffPoly::TermMap m;
        for (int i = 0; i < 5; ++i) m[TermKey{static_cast<unsigned>(e(rng)), static_cast<unsigned>(e(rng))}] = poly({c(rng) ? c(rng) : 1});
        DiffPoly f(std::move(m));
        if (f.zero()) continue;
        Polygon p = build_polygon(f, 0);
        for (const auto& edge : p.inclined) {
            for (const auto& pt : edge.members) EXPECT_EQ(edge.lambda * pt.M - pt.N, edge.gamma);
            for (const auto& pt : p.points) {
                const bool on = std::find(edge.members.begin(), edge.members.end(), pt) != edge.members.end();
                // Below a supporting line the value lambda*M - N is larger.
                if (!on) EXPECT_GT(edge.lambda * pt.M - pt.N, edge.gamma);
            }
        }
        // Every point lies weakly below the hull polyline.
        for (const auto& pt : p.points) {
            for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
                const auto& a = p.vertices[i];
                const auto& b = p.vertices[i + 1];
                if (pt.M < a.M || pt.M > b.M) continue;
                EXPECT_LE((b.M - a.M) * (pt.N - a.N), (b.N - a.N) * (pt.M - a.M));
            }
        }
    }
}

TEST(Characteristic, ExampleOneSymbolic) {
    DiffPoly f = parse_equation(kEx1);
    PolygonEdge e = only_edge(kEx1, 1);
    auto cp = characteristic_poly(e, f, 1);
    EXPECT_EQ(symbolic_to_string(cp.symbolic), "c^3 - x0^8");
    EXPECT_EQ(cp.poly, poly({-1, 0, 0, 1}));
}

TEST(Characteristic, ExampleTwo) {
    DiffPoly f = parse_equation(kEx2);
    auto cp = characteristic_poly(only_edge(kEx2), f, 0);
    EXPECT_EQ(cp.poly, poly({-1, 0, 0, 0, q(-1, 4), 0, q(-1, 4)}));
    EXPECT_FALSE(cp.collapsed);
}

TEST(Characteristic, ExamplesThreeAndFour) {
    EXPECT_EQ(characteristic_poly(only_edge(kEx3), parse_equation(kEx3), 0).poly, poly({1, -2, 1}));
    EXPECT_EQ(characteristic_poly(only_edge(kEx4), parse_equation(kEx4), 0).poly, poly({1, 2, 1}));
}

TEST(Characteristic, SingularPointNeedsOverride) {
    DiffPoly f = parse_equation(kEx1);
    PolygonEdge e = only_edge(kEx1, 0);
    EXPECT_THROW(characteristic_poly(e, f, 0), SingularPointError);
    auto cp = characteristic_poly(e, f, 0, PolygonKind::Petrovic, true);
    EXPECT_TRUE(cp.collapsed);
    EXPECT_NE(cp.note.find("collapses"), std::string::npos);
}

TEST(Characteristic, LocalPolygonOfAlgebraicCurve) {
    DiffPoly f = parse_equation("y^2 - x^3");
    Polygon p = build_polygon(f, 0, PolygonKind::Local);
    ASSERT_EQ(p.inclined.size(), 1u);
    EXPECT_EQ(p.inclined[0].lambda, q(3, 2));
    auto cp = characteristic_poly(p.inclined[0], f, 0, PolygonKind::Local);
    EXPECT_EQ(cp.poly, poly({-1, 0, 1}));
}

TEST(Characteristic, ScalingInvariance) {
    for (const char* eq : {kEx1, kEx2, kEx3, kEx4}) {
        DiffPoly f = parse_equation(eq);
        DiffPoly g = f.scaled(q(-7, 3));
        const Rational x0 = std::string(eq) == kEx1 ? Rational(1) : Rational(0);
        Polygon pf = build_polygon(f, x0), pg = build_polygon(g, x0);
        ASSERT_EQ(pf.inclined.size(), pg.inclined.size());
        for (std::size_t i = 0; i < pf.inclined.size(); ++i) {
            EXPECT_EQ(pf.inclined[i].lambda, pg.inclined[i].lambda);
            EXPECT_EQ(pf.inclined[i].gamma, pg.inclined[i].gamma);
            EXPECT_EQ(characteristic_poly(pg.inclined[i], g, x0).poly,
                      characteristic_poly(pf.inclined[i], f, x0).poly.scaled(q(-7, 3)));
        }
    }
}

TEST(Characteristic, DegreeIsLargestSurvivingM) {
    for (const char* eq : {kEx2, kEx3, kEx4}) {
        DiffPoly f = parse_equation(eq);
        for (const auto& e : build_polygon(f, 0).inclined) {
            long top = -1;
            for (const auto& pt : e.members)
                if (!is_zero(f.coeff(pt.key.p, pt.key.q)(0))) top = std::max(top, pt.M);
            EXPECT_EQ(characteristic_poly(e, f, 0).poly.degree(), top);
        }
    }
}

TEST(Families, DoubleRootIsExceptional) {
    auto fams = enumerate_families(poly({1, -2, 1}), only_edge(kEx3), FamilyKind::Exact);
    ASSERT_EQ(fams.families.size(), 1u);
    EXPECT_TRUE(fams.families[0].exceptional);
    EXPECT_EQ(fams.families[0].multiplicity, 2u);
    EXPECT_EQ(*fams.families[0].rational_root(), 1);
}

TEST(Families, ExampleTwoOrbitClasses) {
    PolygonEdge e = only_edge(kEx2);
    UniPoly p = poly({-1, 0, 0, 0, q(-1, 4), 0, q(-1, 4)});
    auto numeric = enumerate_families(p, e, FamilyKind::Numeric);
    EXPECT_EQ(numeric.families.size(), 6u);
    EXPECT_EQ(numeric.orbit_classes, 3);
    std::map<int, int> sizes;
    for (const auto& f : numeric.families) {
        EXPECT_FALSE(f.exceptional);
        ++sizes[f.orbit_class_id];
    }
    EXPECT_EQ(sizes.size(), 3u);
    for (auto [id, n] : sizes) EXPECT_EQ(n, 2);
    auto exact = enumerate_families(p, e, FamilyKind::Exact);
    ASSERT_EQ(exact.families.size(), 1u);
    EXPECT_EQ(exact.families[0].modulus.degree(), 6);
    EXPECT_EQ(exact.orbit_classes, 3);
    EXPECT_EQ(exact.orbit_method, "exact");
}

TEST(Families, CubeRootsSplitRationalPart) {
    PolygonEdge e = only_edge(kEx1, 1);
    auto fams = enumerate_families(poly({-1, 0, 0, 1}), e, FamilyKind::Exact);
    ASSERT_EQ(fams.families.size(), 2u);
    std::set<long> degrees;
    for (const auto& f : fams.families) {
        EXPECT_FALSE(f.exceptional);
        degrees.insert(f.modulus.degree());
    }
    EXPECT_EQ(degrees, (std::set<long>{1, 2}));
    EXPECT_EQ(fams.orbit_classes, 3);
    EXPECT_EQ(fams.orbit_method, "trivial");
}

TEST(Families, ZeroRootsDiscarded) {
    PolygonEdge e = only_edge(kEx3);
    auto fams = enumerate_families(poly({0, 0, -1, 0, 1}), e, FamilyKind::Exact);
    for (const auto& f : fams.families) EXPECT_NE(f.modulus.coeff(0), 0);
    EXPECT_EQ(fams.orbit_classes, 2);
}

TEST(Families, MultiplicityMatchesGcdChain) {
    std::mt19937 rng(4);
    PolygonEdge e = only_edge(kEx3);
    for (int trial = 0; trial < 40; ++trial) {
        UniPoly p = testutil::random_poly(rng, 2) * testutil::random_poly(rng, 1) * testutil::random_poly(rng, 1);
        if (p.valuation() > 0 || p.degree() < 1) continue;
        p = p * testutil::random_poly(rng, 1);
        if (p.valuation() > 0) continue;
        auto fams = enumerate_families(p, e, FamilyKind::Exact);
        long total = 0;
        for (const auto& f : fams.families) {
            unsigned count = 0;
            UniPoly rest = p;
            while ((rest % f.modulus).zero()) {
                rest = rest / f.modulus;
                ++count;
            }
            EXPECT_EQ(count, f.multiplicity);
            total += f.modulus.degree() * f.multiplicity;
        }
        EXPECT_EQ(total, p.degree());
    }
}

TEST(Families, OrbitsPartitionRoots) {
    PolygonEdge half = only_edge(kEx2);
    // Roots +-1, +-2 and 3: classes {1,-1}, {2,-2}, {3}.
    UniPoly p = poly({-1, 0, 1}) * poly({-4, 0, 1}) * poly({-3, 1});
    auto exact = enumerate_families(p, half, FamilyKind::Exact);
    EXPECT_EQ(exact.orbit_classes, 3);
    std::map<Rational, int> cls;
    for (const auto& f : exact.families) cls[*f.rational_root()] = f.orbit_class_id;
    EXPECT_EQ(cls.at(1), cls.at(-1));
    EXPECT_EQ(cls.at(2), cls.at(-2));
    EXPECT_NE(cls.at(1), cls.at(2));
    EXPECT_NE(cls.at(3), cls.at(1));
    auto numeric = enumerate_families(p, half, FamilyKind::Numeric);
    EXPECT_EQ(numeric.orbit_classes, 3);

    PolygonEdge one = only_edge(kEx3);
    auto trivial = enumerate_families(p, one, FamilyKind::Numeric);
    std::set<int> ids;
    for (const auto& f : trivial.families) ids.insert(f.orbit_class_id);
    EXPECT_EQ(ids.size(), trivial.families.size());
}

TEST(Families, ThirdRootsOfUnityMatchNumerically) {
    // Roots of c^3 - 8 form one orbit under multiplication by cube roots of unity.
    PolygonEdge e;
    e.lambda = q(1, 3);
    auto fams = enumerate_families(poly({-8, 0, 0, 1}), e, FamilyKind::Numeric);
    EXPECT_EQ(fams.orbit_method, "numeric");
    EXPECT_EQ(fams.orbit_classes, 1);
    auto exact = enumerate_families(poly({-8, 0, 0, 1}), e, FamilyKind::Exact);
    EXPECT_EQ(exact.orbit_classes, 1);
    EXPECT_EQ(exact.families.size(), 2u);
    EXPECT_EQ(exact.families[0].orbit_class_id, exact.families[1].orbit_class_id);
}

TEST(Svg, Emits) {
    std::string svg = polygon_svg(build_polygon(parse_equation(kEx2), 0));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("=1/2"), std::string::npos);
    EXPECT_NE(svg.find("<circle"), std::string::npos);
}
