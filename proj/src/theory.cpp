#include "percolab/theory.hpp"

#include <cmath>
#include <limits>

#include "percolab/error.hpp"

namespace percolab {

SolveResult poisson_survival(double epsilon, double tol) {
    if (!(epsilon > 0.0)) fail(Errc::NonPositiveEpsilon, "epsilon = " + std::to_string(epsilon));
    if (!(tol > 0.0)) fail(Errc::InvalidParams, "tolerance must be positive");
    // g(y) = y - 1 + exp(-(1+eps)y), written with expm1 so the sign is
    // reliable even when eps*y is far below double resolution around 1.
    const auto g = [&](double y) { return y + std::expm1(-(1.0 + epsilon) * y); };
    double lo = tol, hi = 1.0;
    int iters = 0;
    while (hi - lo > tol && iters < 200) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    const double y = 0.5 * (lo + hi);
    return {y, std::abs(g(y)), iters};
}

SeriesResult series_F(double c, double term_tol) {
    if (!(c > 1.0))
        fail(Errc::SubcriticalMean,
             "c = " + std::to_string(c) + "; the identity regime needs c > 1");
    if (!(term_tol > 0.0)) fail(Errc::InvalidParams, "term tolerance must be positive");
    const double log_c = std::log(c);
    const std::uint64_t cap = 1'000'000;
    double sum = 0.0, term = 0.0;
    std::uint64_t k = 1;
    for (; k <= cap; ++k) {
        const double kk = static_cast<double>(k);
        const double log_term =
            (kk - 1.0) * std::log(kk) - std::lgamma(kk + 1.0) + (kk - 1.0) * log_c - c * kk;
        term = std::exp(log_term);
        sum += term;
        if (term < term_tol) break;
    }
    // term ratios increase toward r = c*e^(1-c) < 1, so the truncated tail is
    // at most a geometric series from the last term.
    const double r = c * std::exp(1.0 - c);
    const double tail = r < 1.0 ? term * r / (1.0 - r)
                                : std::numeric_limits<double>::infinity();
    return {sum, tail, term, k > cap ? cap : k};
}

SolveResult binomial_gw_survival(std::uint32_t d, double p, double tol) {
    if (d < 1) fail(Errc::InvalidParams, "d must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidProbability, "p = " + std::to_string(p));
    if (!(tol > 0.0)) fail(Errc::InvalidParams, "tolerance must be positive");
    const double dd = static_cast<double>(d);
    if (dd * p <= 1.0) return {0.0, 0.0, 0};
    if (p >= 1.0) return {1.0, 0.0, 0};
    const auto h = [&](double rho) { return std::pow(1.0 - p + p * rho, dd) - rho; };
    // h(0) > 0 and h(1) = 0 with h'(1) > 0; bracket the smallest root with the
    // interior minimizer of h, where h is strictly negative.
    double rho_min = (std::pow(1.0 / (dd * p), 1.0 / (dd - 1.0)) - (1.0 - p)) / p;
    if (!(rho_min > 0.0) || !(rho_min < 1.0) || !(h(rho_min) < 0.0))
        return {0.0, std::abs(h(1.0)), 0};  // numerically at criticality
    double lo = 0.0, hi = rho_min;
    int iters = 0;
    while (hi - lo > tol && iters < 200) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    const double rho = 0.5 * (lo + hi);
    return {1.0 - rho, std::abs(h(rho)), iters};
}

}  // namespace percolab
