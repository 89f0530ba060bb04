#pragma once

#include <cstdint>

namespace percolab {

struct SolveResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Survival probability of a Galton-Watson tree with Poisson(1+epsilon)
// offspring: the unique root in (0,1) of y = 1 - exp(-(1+epsilon)y), found by
// bisection on [tol, 1].
SolveResult poisson_survival(double epsilon, double tol = 1e-12);

struct SeriesResult {
    double value = 0.0;
    double tail_bound = 0.0;  // geometric bound on the truncated tail
    double last_term = 0.0;
    std::uint64_t terms = 0;
};

// F(c) = sum_{k>=1} k^{k-1}/k! * c^{k-1} * exp(-c k), terms computed in
// log space, truncated when the current term drops below term_tol.
// For c > 1 this equals 1 - y(c-1).
SeriesResult series_F(double c, double term_tol = 1e-15);

// Survival probability of a Galton-Watson tree with Bin(d, p) offspring:
// 1 - rho for the smallest fixed point of rho = (1 - p + p*rho)^d.
// Returns 0 when d*p <= 1.
SolveResult binomial_gw_survival(std::uint32_t d, double p, double tol = 1e-12);

}  // namespace percolab
