// SPDX-License-Identifier: Apache-2.0
//
// Tail probabilities used by the coverage analysis: the Gaussian upper tail,
// the generalized Marcum Q function, and the noncentral chi-square CDF.
// Accuracy target is ~1e-12 absolute over the parameter ranges exercised by
// the validation suite; beyond representable tails the functions saturate to
// exact 0.0 / 1.0 instead of returning subnormal noise.

#pragma once

namespace riscov {

// P(Z > x) for standard normal Z.
double gaussian_tail(double x);

// Generalized Marcum Q_m(a, b) = P(X > b^2) with X ~ noncentral chi-square,
// 2m degrees of freedom, noncentrality a^2.
// Half-integer orders 1/2 and 3/2 use closed forms built from Gaussian
// tails; other orders use the Poisson-mixture series over regularized upper
// incomplete gamma functions. Requires m > 0, a >= 0, b >= 0
// (std::domain_error otherwise). b == 0 returns exactly 1.
double marcum_q(double order, double a, double b);

// The general series evaluator, callable at any order (including 1/2 and
// 3/2) so the closed forms can be checked against an independent route.
double marcum_q_series(double order, double a, double b);

// CDF of the noncentral chi-square with `dof` degrees of freedom and
// noncentrality `lambda`, evaluated by the complementary Poisson-mixture
// series over regularized lower incomplete gammas (not as 1 - marcum_q, so
// the complement identity is a genuine two-route check).
// Requires dof > 0, lambda >= 0 (std::domain_error otherwise); x <= 0
// returns exactly 0.
double noncentral_chi2_cdf(double dof, double lambda, double x);

namespace detail {
// Regularized incomplete gamma functions P(s,x) and Q(s,x), P + Q = 1.
double gamma_p(double s, double x);
double gamma_q(double s, double x);
}  // namespace detail

}  // namespace riscov
