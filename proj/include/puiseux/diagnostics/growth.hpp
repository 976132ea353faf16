#pragma once

// Coefficient-growth heuristics: root and ratio tests plus a Gevrey fit
//   log|c_k| ~ sigma * log Gamma(E + 1) + rho * E + beta,   E = k / s,
// where E is the exponent offset of c_k from the leading term. log Gamma(E + 1)
// is E log E - E + O(log E); using it directly removes the Stirling bias at
// small N. The intercept absorbs overall scale, so sigma and rho do not depend on it.
// The same fit on the running maximum of log|c_k| (the envelope), and on the
// second half of the samples, keeps the dips and early transients of convergent
// sequences from reading as curvature.

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith/ball.hpp"
#include "puiseux/model/series.hpp"

namespace puiseux {

/// Verdict floor: fewer nonzero coefficients than this beyond the leading term is inconclusive.
inline constexpr std::size_t kMinGrowthSamples = 8;
inline constexpr double kDivergentSigma = 0.5;
inline constexpr double kMaxFitResidual = 1.0;

struct GrowthProfile {
    long s = 1;
    std::vector<long> index;        ///< k of each nonzero coefficient used
    std::vector<double> log_mag;    ///< log|c_k|
    std::vector<double> root_test;  ///< |c_k / c_k0|^(1/(E_k - E_k0)), scale free
    std::vector<double> ratio;      ///< |c_k / c_prev|^(1/(E_k - E_prev)) between consecutive samples
    double sigma = 0, rho = 0, beta = 0;
    double residual = 0;  ///< RMS of the fit in log units
    double envelope_sigma = 0;       ///< sigma fitted to the running maximum of log|c_k|
    double tail_sigma = 0;           ///< sigma fitted to the second half of the samples
    double tail_envelope_sigma = 0;  ///< the same on the envelope
    double radius = 0;    ///< exp(-rho) from the sigma = 0 fit
    bool valid = false;
    std::string note;
};

namespace detail {

inline double log_abs(const Rational& q) {
    long e1 = 0, e2 = 0;
    const double m1 = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
    const double m2 = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
    return std::log(std::abs(m1)) - std::log(m2) + static_cast<double>(e1 - e2) * std::log(2.0);
}

inline std::optional<double> log_abs_nonzero(const Rational& q) {
    if (is_zero(q)) return std::nullopt;
    return log_abs(q);
}

inline std::optional<double> log_abs_nonzero(const ComplexBall& b) {
    if (b.contains_zero()) return std::nullopt;
    return b.log_abs_mid();
}

/// Least squares for y ~ X beta with a handful of columns (normal equations, partial pivoting).
template <std::size_t M>
std::array<double, M> least_squares(const std::vector<std::array<double, M>>& x, const std::vector<double>& y) {
    std::array<std::array<long double, M + 1>, M> a{};
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = 0; j < M; ++j) a[i][j] += static_cast<long double>(x[r][i]) * x[r][j];
            a[i][M] += static_cast<long double>(x[r][i]) * y[r];
        }
    for (std::size_t c = 0; c < M; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < M; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        if (a[c][c] == 0) continue;
        for (std::size_t r = 0; r < M; ++r) {
            if (r == c) continue;
            const long double f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= M; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::array<double, M> out{};
    for (std::size_t i = 0; i < M; ++i) out[i] = a[i][i] == 0 ? 0.0 : static_cast<double>(a[i][M] / a[i][i]);
    return out;
}

}  // namespace detail

/// Profile from (k, log|c_k|) samples of a series with ramification s. k must be >= 1.
inline GrowthProfile profile_log_magnitudes(const std::vector<std::pair<long, double>>& samples, long s) {
    GrowthProfile p;
    p.s = s;
    for (const auto& [k, l] : samples) {
        p.index.push_back(k);
        p.log_mag.push_back(l);
    }
    if (samples.size() < kMinGrowthSamples) {
        p.note = "insufficient data: " + std::to_string(samples.size()) + " nonzero coefficients, need " +
                 std::to_string(kMinGrowthSamples);
        return p;
    }
    auto expo = [s](long k) { return static_cast<double>(k) / static_cast<double>(s); };

    const double e0 = expo(p.index.front()), l0 = p.log_mag.front();
    for (std::size_t i = 1; i < p.index.size(); ++i) {
        const double de = expo(p.index[i]) - e0;
        p.root_test.push_back(std::exp((p.log_mag[i] - l0) / de));
        const double step = expo(p.index[i]) - expo(p.index[i - 1]);
        p.ratio.push_back(std::exp((p.log_mag[i] - p.log_mag[i - 1]) / step));
    }

    std::vector<std::array<double, 3>> rows;
    std::vector<std::array<double, 2>> rows0;
    for (long k : p.index) {
        const double e = expo(k);
        rows.push_back({std::lgamma(e + 1.0), e, 1.0});
        rows0.push_back({e, 1.0});
    }
    const auto fit = detail::least_squares<3>(rows, p.log_mag);
    p.sigma = fit[0];
    p.rho = fit[1];
    p.beta = fit[2];
    double ss = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double d = p.log_mag[i] - (fit[0] * rows[i][0] + fit[1] * rows[i][1] + fit[2]);
        ss += d * d;
    }
    p.residual = std::sqrt(ss / static_cast<double>(rows.size()));
    p.radius = std::exp(-detail::least_squares<2>(rows0, p.log_mag)[0]);

    std::vector<double> envelope(p.log_mag);
    for (std::size_t i = 1; i < envelope.size(); ++i) envelope[i] = std::max(envelope[i], envelope[i - 1]);
    p.envelope_sigma = detail::least_squares<3>(rows, envelope)[0];
    const auto half = static_cast<std::ptrdiff_t>(rows.size() / 2);
    const std::vector<std::array<double, 3>> tail_rows(rows.begin() + half, rows.end());
    p.tail_sigma = detail::least_squares<3>(tail_rows, std::vector<double>(p.log_mag.begin() + half, p.log_mag.end()))[0];
    p.tail_envelope_sigma =
        detail::least_squares<3>(tail_rows, std::vector<double>(envelope.begin() + half, envelope.end()))[0];
    p.valid = true;
    return p;
}

/// Profile of a computed series; the leading term is excluded and zero coefficients skipped.
template <class T>
GrowthProfile profile(const TruncatedSeries<T>& series) {
    std::vector<std::pair<long, double>> samples;
    for (std::size_t k = 1; k < series.coeffs.size(); ++k)
        if (auto l = detail::log_abs_nonzero(series.coeffs[k])) samples.emplace_back(static_cast<long>(k), *l);
    return profile_log_magnitudes(samples, series.s);
}

enum class VerdictKind { ConvergentConsistent, DivergentGevrey, Inconclusive };

inline std::string to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::ConvergentConsistent: return "convergent-consistent";
        case VerdictKind::DivergentGevrey: return "divergent-Gevrey";
        case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Always heuristic: evidence from finitely many coefficients.
struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<double> radius;
    std::optional<double> sigma;
    std::string rationale;
};

inline Verdict classify(const GrowthProfile& p) {
    Verdict v;
    if (!p.valid) {
        v.rationale = p.note.empty() ? "profile invalid" : p.note;
        return v;
    }
    std::ostringstream why;
    why.precision(3);
    why << "sigma fit " << p.sigma << " (rms " << p.residual << "), envelope " << p.envelope_sigma << ", tail "
        << p.tail_sigma << ", tail envelope " << p.tail_envelope_sigma;
    const bool factorial = p.sigma > kDivergentSigma && p.envelope_sigma > kDivergentSigma &&
                           p.tail_sigma > kDivergentSigma && p.residual < kMaxFitResidual;
    if (factorial) {
        v.kind = VerdictKind::DivergentGevrey;
        v.sigma = p.sigma;
        why << "; factorial growth above sigma " << kDivergentSigma << " in every fit";
    } else if (p.tail_envelope_sigma <= kDivergentSigma) {
        v.kind = VerdictKind::ConvergentConsistent;
        v.radius = p.radius;
        v.sigma = p.sigma;
        why << "; root test bounded over the tail, radius estimate " << p.radius;
    } else {
        why << "; no test conclusive";
    }
    v.rationale = why.str();
    return v;
}

}  // namespace puiseux
