#pragma once

#include <optional>
#include <string>

#include "puiseux/model/series.hpp"

namespace puiseux {

struct OrderCheck {
    bool identically_zero = false;
    std::optional<Rational> order;  ///< exact order in xi when not identically zero
    Rational known_zero_below;      ///< ball mode: all coefficients below this order contain 0
    bool meets_target = false;

    [[nodiscard]] std::string describe() const {
        if (identically_zero) return "identically zero";
        if (order) return "order " + to_string(*order);
        return "zero below " + to_string(known_zero_below) + " (unresolved)";
    }
};

/// Residual order of F(phi) compared with a target order in xi.
template <class T>
OrderCheck verify_order(const DiffPoly& f, const TruncatedSeries<T>& phi, const Rational& target, const T& like) {
    OrderCheck out;
    Residual<T> res = substitute_exact(f, phi, like);
    out.identically_zero = res.identically_zero();
    out.order = res.order();
    out.known_zero_below = res.known_zero_below();
    if (out.identically_zero) out.meets_target = true;
    else if (out.order) out.meets_target = *out.order >= target;
    else out.meets_target = out.known_zero_below >= target;
    return out;
}

inline OrderCheck verify_order(const DiffPoly& f, const TruncatedSeries<Rational>& phi, const Rational& target) {
    return verify_order(f, phi, target, Rational(0));
}

}  // namespace puiseux
