#pragma once

/**
 * @file diff_poly.hpp
 * @brief First-order differential polynomials F(x, y, y') = sum a_pq(x) y^p y'^q.
 */

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith/poly.hpp"

namespace puiseux {

/// Exponent pair of y^p (y')^q.
struct TermKey {
    unsigned p = 0;
    unsigned q = 0;
    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

using BiPoly = Poly<UniPoly>;   ///< sum_j b_j(x) y^j
using TriPoly = Poly<BiPoly>;  ///< sum_k B_k(x, y) (y')^k

enum class Variable { X, Y, DY };

class DiffPoly {
public:
    using TermMap = std::map<TermKey, UniPoly>;

    DiffPoly() = default;
    explicit DiffPoly(TermMap terms) : terms_(std::move(terms)) { prune(); }

    static DiffPoly monomial(unsigned p, unsigned q, const UniPoly& a = UniPoly(Rational(1))) {
        return DiffPoly(TermMap{{TermKey{p, q}, a}});
    }
    static DiffPoly constant(const UniPoly& a) { return monomial(0, 0, a); }
    static DiffPoly x() { return constant(UniPoly::variable()); }
    static DiffPoly y() { return monomial(1, 0); }
    static DiffPoly dy() { return monomial(0, 1); }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool zero() const { return terms_.empty(); }

    [[nodiscard]] UniPoly coeff(unsigned p, unsigned q) const {
        auto it = terms_.find(TermKey{p, q});
        return it == terms_.end() ? UniPoly() : it->second;
    }

    /// s = max q (degree in y').
    [[nodiscard]] unsigned order_in_dy() const {
        unsigned s = 0;
        for (const auto& [k, a] : terms_) s = std::max(s, k.q);
        return s;
    }
    [[nodiscard]] unsigned degree_in_y() const {
        unsigned d = 0;
        for (const auto& [k, a] : terms_) d = std::max(d, k.p);
        return d;
    }
    /// max p + q over the terms.
    [[nodiscard]] unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [k, a] : terms_) d = std::max(d, k.p + k.q);
        return d;
    }
    [[nodiscard]] long x_degree() const {
        long d = -1;
        for (const auto& [k, a] : terms_) d = std::max(d, a.degree());
        return d;
    }
    [[nodiscard]] bool depends_on_dy() const { return order_in_dy() > 0; }
    [[nodiscard]] bool depends_on_y() const { return degree_in_y() > 0; }

    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
        TermMap out = a.terms_;
        for (const auto& [k, c] : b.terms_) out[k] += c;
        return DiffPoly(std::move(out));
    }
    friend DiffPoly operator-(const DiffPoly& a) {
        TermMap out = a.terms_;
        for (auto& [k, c] : out) c = -c;
        return DiffPoly(std::move(out));
    }
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
        TermMap out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) out[TermKey{ka.p + kb.p, ka.q + kb.q}] += ca * cb;
        return DiffPoly(std::move(out));
    }
    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator-=(const DiffPoly& o) { return *this = *this - o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    [[nodiscard]] DiffPoly scaled(const Rational& c) const {
        TermMap out = terms_;
        for (auto& [k, a] : out) a = a.scaled(c);
        return DiffPoly(std::move(out));
    }

    /// Constant in x, y, y' (possibly zero).
    [[nodiscard]] bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == TermKey{0, 0} &&
                                  terms_.begin()->second.degree() == 0);
    }

    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

    /// F(x + a, y, y'): coefficients a_pq(x + a).
    [[nodiscard]] DiffPoly shift_x(const Rational& a) const {
        TermMap out;
        for (const auto& [k, c] : terms_) out[k] = c.taylor_shift(a);
        return DiffPoly(std::move(out));
    }

    /// Formal partial derivative treating x, y, y' as independent.
    [[nodiscard]] DiffPoly partial(Variable v) const {
        TermMap out;
        for (const auto& [k, a] : terms_) {
            switch (v) {
                case Variable::X:
                    out[k] += a.derivative();
                    break;
                case Variable::Y:
                    if (k.p > 0) out[TermKey{k.p - 1, k.q}] += a.scaled(Rational(k.p));
                    break;
                case Variable::DY:
                    if (k.q > 0) out[TermKey{k.p, k.q - 1}] += a.scaled(Rational(k.q));
                    break;
            }
        }
        return DiffPoly(std::move(out));
    }

    /// A_0, ..., A_s with F = sum_j A_j(x, y) (y')^j.
    [[nodiscard]] std::vector<BiPoly> coeff_view_by_dy() const {
        std::vector<std::vector<UniPoly>> rows(order_in_dy() + 1);
        for (const auto& [k, a] : terms_) {
            auto& row = rows[k.q];
            if (row.size() <= k.p) row.resize(k.p + 1);
            row[k.p] += a;
        }
        std::vector<BiPoly> out;
        out.reserve(rows.size());
        for (auto& row : rows) out.emplace_back(std::move(row));
        return out;
    }

    [[nodiscard]] TriPoly to_tri() const {
        auto view = coeff_view_by_dy();
        return TriPoly(std::move(view));
    }

    static DiffPoly from_tri(const TriPoly& t) {
        TermMap out;
        for (std::size_t q = 0; q < t.coeffs().size(); ++q) {
            const BiPoly& b = t.coeffs()[q];
            for (std::size_t p = 0; p < b.coeffs().size(); ++p)
                out[TermKey{static_cast<unsigned>(p), static_cast<unsigned>(q)}] += b.coeffs()[p];
        }
        return DiffPoly(std::move(out));
    }

    /// y = 1/w, y' = -w'/w^2, multiplied by the least w^K clearing denominators.
    [[nodiscard]] DiffPoly invert_dependent() const {
        unsigned k_max = 0;
        for (const auto& [k, a] : terms_) k_max = std::max(k_max, k.p + 2 * k.q);
        TermMap out;
        for (const auto& [k, a] : terms_) {
            const UniPoly c = (k.q % 2) ? -a : a;
            out[TermKey{k_max - k.p - 2 * k.q, k.q}] += c;
        }
        return DiffPoly(std::move(out));
    }

    /// Smallest p over the terms (the power of y dividing F).
    [[nodiscard]] unsigned y_valuation() const {
        if (terms_.empty()) return 0;
        unsigned v = terms_.begin()->first.p;
        for (const auto& [k, a] : terms_) v = std::min(v, k.p);
        return v;
    }

    /// Coefficients a_pq(x0) as a polynomial identity in (y, y').
    [[nodiscard]] std::map<TermKey, Rational> at(const Rational& x0) const {
        std::map<TermKey, Rational> out;
        for (const auto& [k, a] : terms_) {
            Rational v = a(x0);
            if (!is_zero(v)) out[k] = v;
        }
        return out;
    }

    /// Monic gcd of all coefficients a_pq(x) (their common polynomial content).
    [[nodiscard]] UniPoly x_content() const {
        UniPoly g;
        for (const auto& [k, a] : terms_) g = gcd(g, a);
        return g;
    }

    /// Readable form that parse_equation accepts back.
    [[nodiscard]] std::string to_string() const;

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.zero()) it = terms_.erase(it);
            else ++it;
        }
    }

    TermMap terms_;
};

namespace detail {

inline std::string monomial_text(unsigned p, unsigned q) {
    std::string out;
    auto put = [&out](const std::string& base, unsigned e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += base;
        if (e > 1) out += "^" + std::to_string(e);
    };
    put("y", p);
    put("y'", q);
    return out;
}

}  // namespace detail

inline std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    // Highest y' power first, then highest y power.
    std::vector<std::pair<TermKey, UniPoly>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.q != b.first.q) return a.first.q > b.first.q;
        return a.first.p > b.first.p;
    });
    std::string out;
    for (const auto& [k, a] : ordered) {
        const std::string mono = detail::monomial_text(k.p, k.q);
        std::string coef = a.to_string("x");
        bool negative = false;
        // Single-monomial coefficients carry their sign outside.
        const bool single = std::count_if(a.coeffs().begin(), a.coeffs().end(),
                                          [](const Rational& c) { return !is_zero(c); }) == 1;
        if (single && coef[0] == '-') {
            negative = true;
            coef.erase(0, 1);
        }
        std::string term;
        if (mono.empty()) {
            term = single ? coef : "(" + coef + ")";
            if (!single && out.empty()) term = coef;
        } else if (coef == "1") {
            term = mono;
        } else {
            term = (single ? coef : "(" + coef + ")") + "*" + mono;
        }
        if (out.empty()) out = negative ? "-" + term : term;
        else out += negative ? " - " + term : " + " + term;
    }
    return out;
}

}  // namespace puiseux
