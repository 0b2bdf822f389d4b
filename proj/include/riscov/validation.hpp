// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical oracles for the tail-probability kernels. These use
// deliberately different algorithms (direct quadrature of the defining
// integral, plain ascending series) so that agreement with the production
// implementations is a genuine two-route check rather than a tautology.

#pragma once

#include <cstdint>

namespace riscov::validation {

// Exponentially scaled modified Bessel function e^{-x} I_0(x), by the
// ascending power series of I_0 (all-positive terms). Valid for 0 <= x <= 700.
double bessel_i0_scaled(double x);

// Q_1(a, b) by adaptive Simpson quadrature of the defining integral
//   int_b^inf x * exp(-(x^2+a^2)/2) * I_0(a x) dx,
// written in the scaled form x * exp(-(x-a)^2/2) * [e^{-ax} I_0(ax)].
double marcum_q1_quadrature(double a, double b);

// Noncentral chi-square CDF by the ascending Poisson mixture
//   sum_k e^{-l/2} (l/2)^k / k! * P(chi2_{dof+2k} <= x),
// truncated at `tol`, with the central CDF computed by its own power series.
double noncentral_chi2_cdf_series(double dof, double lambda, double x,
                                  double tol = 1e-14);

struct AccuracyReport {
  double max_half_identity_err{0.0};   // series Q_{1/2} vs Gaussian-tail closed form
  double max_q1_quadrature_err{0.0};   // Q_1 vs defining-integral quadrature
  double max_complement_err{0.0};      // chi-square CDF + Marcum complementarity
  int points_checked{0};
};

// Runs the full accuracy sweep used by the self-test command and the
// acceptance gate. `identity_points` random points are drawn in [0,20]^2
// from the given seed for the half-order identity; the quadrature and
// complement checks run on fixed grids in [0,10]^2.
AccuracyReport special_function_accuracy(int identity_points, std::uint64_t seed);

}  // namespace riscov::validation
