#pragma once

/**
 * @file polygon.hpp
 * @brief Petrovic polygon of F at a base point: support points (M, N) = (p+q, q),
 *        the upper convex hull, inclined edges and their values gamma.
 *
 * A second "local" support is available where N = q - ord_{x0} a_pq. It is
 * the same point set at nonsingular x0 and reduces to the classical Newton
 * polygon of an algebraic curve when F does not involve y'.
 */

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/model/diff_poly.hpp"

namespace puiseux {

enum class PolygonKind { Petrovic, Local };

inline std::string to_string(PolygonKind k) { return k == PolygonKind::Petrovic ? "petrovic" : "local"; }

struct SupportPoint {
    long M = 0;
    long N = 0;
    TermKey key;
    friend bool operator==(const SupportPoint& a, const SupportPoint& b) {
        return a.M == b.M && a.N == b.N && a.key == b.key;
    }
};

struct PolygonEdge {
    SupportPoint left, right;
    std::vector<SupportPoint> members;  ///< all support points on the closed segment, by M
    Rational lambda;                    ///< slope (N_right - N_left)/(M_right - M_left)
    Rational gamma;                     ///< lambda*M - N on the edge

    [[nodiscard]] long r() const { return lambda.get_num().get_si(); }
    [[nodiscard]] long s() const { return lambda.get_den().get_si(); }
};

struct Polygon {
    PolygonKind kind = PolygonKind::Petrovic;
    Rational x0;
    std::vector<SupportPoint> points;    ///< sorted by (M, N)
    std::vector<SupportPoint> vertices;  ///< upper hull, left to right
    std::vector<PolygonEdge> inclined;
    std::vector<PolygonEdge> horizontal;
    std::vector<PolygonEdge> vertical;   ///< end segments with equal M (lambda unused)
    bool collinear = false;              ///< all support points on one line
};

/// True when some coefficient a_pq vanishes at x0.
inline bool is_singular_point(const DiffPoly& f, const Rational& x0) {
    for (const auto& [k, a] : f.terms())
        if (is_zero(a(x0))) return true;
    return false;
}

/// Petrovic support: one point (p+q, q) per term.
inline std::vector<SupportPoint> support(const DiffPoly& f) {
    std::vector<SupportPoint> out;
    for (const auto& [k, a] : f.terms())
        out.push_back({static_cast<long>(k.p + k.q), static_cast<long>(k.q), k});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.M != b.M ? a.M < b.M : a.N < b.N; });
    return out;
}

/// Local support at x0: N = q - ord_{x0} a_pq.
inline std::vector<SupportPoint> support_at(const DiffPoly& f, const Rational& x0) {
    std::vector<SupportPoint> out;
    for (const auto& [k, a] : f.terms()) {
        const long v = a.taylor_shift(x0).valuation();
        out.push_back({static_cast<long>(k.p + k.q), static_cast<long>(k.q) - v, k});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.M != b.M ? a.M < b.M : a.N < b.N; });
    return out;
}

namespace detail {

inline long cross(const SupportPoint& o, const SupportPoint& a, const SupportPoint& b) {
    return (a.M - o.M) * (b.N - o.N) - (a.N - o.N) * (b.M - o.M);
}

inline PolygonEdge make_edge(const SupportPoint& a, const SupportPoint& b, const std::vector<SupportPoint>& pts) {
    PolygonEdge e;
    e.left = a;
    e.right = b;
    for (const auto& p : pts)
        if (cross(a, b, p) == 0 && p.M >= a.M && p.M <= b.M && std::min(a.N, b.N) <= p.N &&
            p.N <= std::max(a.N, b.N))
            e.members.push_back(p);
    if (b.M != a.M) {
        e.lambda = make_rational(b.N - a.N, b.M - a.M);
        e.gamma = e.lambda * a.M - a.N;
    }
    return e;
}

}  // namespace detail

/// Upper hull from the leftmost highest point to the rightmost highest point.
inline Polygon upper_hull(std::vector<SupportPoint> points) {
    if (points.empty()) throw std::invalid_argument("polygon of an empty support");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.M != b.M ? a.M < b.M : a.N < b.N; });
    Polygon poly;
    poly.points = points;

    // Topmost point of every column.
    std::vector<SupportPoint> tops;
    for (const auto& p : points) {
        if (!tops.empty() && tops.back().M == p.M) tops.back() = p;
        else tops.push_back(p);
    }
    std::vector<SupportPoint> hull;
    for (const auto& p : tops) {
        while (hull.size() >= 2 && detail::cross(hull[hull.size() - 2], hull.back(), p) >= 0) hull.pop_back();
        hull.push_back(p);
    }
    poly.vertices = hull;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        PolygonEdge e = detail::make_edge(hull[i], hull[i + 1], points);
        if (is_zero(e.lambda)) poly.horizontal.push_back(std::move(e));
        else poly.inclined.push_back(std::move(e));
    }
    // Vertical end segments below the leftmost and rightmost hull vertices.
    const SupportPoint& first = points.front();
    if (first.M == hull.front().M && first.N != hull.front().N)
        poly.vertical.push_back(detail::make_edge(first, hull.front(), points));
    auto last_col = std::find_if(points.begin(), points.end(), [&](const auto& p) { return p.M == hull.back().M; });
    if (hull.size() > 1 && last_col->N != hull.back().N)
        poly.vertical.push_back(detail::make_edge(*last_col, hull.back(), points));

    poly.collinear = points.size() >= 2;
    for (std::size_t i = 2; i < points.size() && poly.collinear; ++i)
        if (detail::cross(points[0], points[1], points[i]) != 0) poly.collinear = false;
    return poly;
}

inline Polygon build_polygon(const DiffPoly& f, const Rational& x0, PolygonKind kind = PolygonKind::Petrovic) {
    Polygon p = upper_hull(kind == PolygonKind::Petrovic ? support(f) : support_at(f, x0));
    p.kind = kind;
    p.x0 = x0;
    return p;
}

/// SVG drawing: M to the right, N upward, one grid unit per lattice step.
inline std::string polygon_svg(const Polygon& poly) {
    long mmin = 0, mmax = 1, nmin = 0, nmax = 1;
    for (const auto& p : poly.points) {
        mmin = std::min(mmin, p.M);
        mmax = std::max(mmax, p.M);
        nmin = std::min(nmin, p.N);
        nmax = std::max(nmax, p.N);
    }
    const long unit = 48, pad = 40;
    const long width = (mmax - mmin) * unit + 2 * pad, height = (nmax - nmin) * unit + 2 * pad;
    auto X = [&](long m) { return pad + (m - mmin) * unit; };
    auto Y = [&](long n) { return height - pad - (n - nmin) * unit; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (long m = mmin; m <= mmax; ++m)
        os << "<line x1=\"" << X(m) << "\" y1=\"" << Y(nmin) << "\" x2=\"" << X(m) << "\" y2=\"" << Y(nmax)
           << "\" stroke=\"#e0e0e0\"/>\n";
    for (long n = nmin; n <= nmax; ++n)
        os << "<line x1=\"" << X(mmin) << "\" y1=\"" << Y(n) << "\" x2=\"" << X(mmax) << "\" y2=\"" << Y(n)
           << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << X(mmax) + 8 << "\" y=\"" << Y(nmin) + 4 << "\" font-size=\"12\">M</text>\n";
    os << "<text x=\"" << X(mmin) - 4 << "\" y=\"" << Y(nmax) - 10 << "\" font-size=\"12\">N</text>\n";
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        os << (i ? " " : "") << X(poly.vertices[i].M) << "," << Y(poly.vertices[i].N);
    os << "\"/>\n";
    for (const auto& e : poly.inclined) {
        os << "<line x1=\"" << X(e.left.M) << "\" y1=\"" << Y(e.left.N) << "\" x2=\"" << X(e.right.M) << "\" y2=\""
           << Y(e.right.N) << "\" stroke=\"#c03030\" stroke-width=\"3\"/>\n";
        const long mx = (X(e.left.M) + X(e.right.M)) / 2, my = (Y(e.left.N) + Y(e.right.N)) / 2;
        os << "<text x=\"" << mx + 6 << "\" y=\"" << my - 6 << "\" font-size=\"13\" fill=\"#c03030\">&#955;="
           << to_string(e.lambda) << "</text>\n";
    }
    for (const auto& p : poly.points)
        os << "<circle cx=\"" << X(p.M) << "\" cy=\"" << Y(p.N) << "\" r=\"4\" fill=\"#2050a0\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace puiseux
