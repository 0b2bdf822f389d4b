// SPDX-License-Identifier: Apache-2.0

#include "riscov/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace riscov {

namespace {
constexpr double kSqrt1_2 = 0.70710678118654752440;  // 1/sqrt(2)

inline double clamp01(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return v;
}

// Lower regularized gamma by power series; valid for x < s + 1.
double gamma_p_series(double s, double x) {
  if (x <= 0.0) return 0.0;
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < 100000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
  }
  double lg = s * std::log(x) - x - std::lgamma(s);
  return sum * std::exp(lg);
}

// Upper regularized gamma by modified Lentz continued fraction; x >= s + 1.
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  double lg = s * std::log(x) - x - std::lgamma(s);
  return std::exp(lg) * h;
}
}  // namespace

namespace detail {

double gamma_p(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0) || !std::isfinite(s) || !std::isfinite(x))
    throw std::domain_error("gamma_p: requires s > 0 and finite x >= 0");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return clamp01(gamma_p_series(s, x));
  return clamp01(1.0 - gamma_q_cf(s, x));
}

double gamma_q(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0) || !std::isfinite(s) || !std::isfinite(x))
    throw std::domain_error("gamma_q: requires s > 0 and finite x >= 0");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return clamp01(1.0 - gamma_p_series(s, x));
  return clamp01(gamma_q_cf(s, x));
}

}  // namespace detail

double gaussian_tail(double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw std::domain_error("gaussian_tail: NaN argument");
    return x > 0.0 ? 0.0 : 1.0;
  }
  // erfc underflows to exact zero past ~x = 38, which is the desired
  // saturation behavior.
  return 0.5 * std::erfc(x * kSqrt1_2);
}

namespace {

void check_marcum_domain(double order, double a, double b) {
  if (!(order > 0.0) || !std::isfinite(order))
    throw std::domain_error("marcum_q: order must be > 0");
  if (!(a >= 0.0) || !std::isfinite(a))
    throw std::domain_error("marcum_q: first argument must be finite and >= 0");
  if (!(b >= 0.0) || !std::isfinite(b))
    throw std::domain_error("marcum_q: second argument must be finite and >= 0");
}

// Q_{1/2}(a,b) = P(Z > b - a) + P(Z > b + a).
inline double marcum_q_half(double a, double b) {
  return clamp01(gaussian_tail(b - a) + gaussian_tail(b + a));
}

// Q_{3/2}(a,b) = Q_{1/2}(a,b) + sqrt(2/pi)/(2a) * (e^{-(b-a)^2/2} - e^{-(b+a)^2/2}),
// with the a -> 0 limit sqrt(2/pi) * b * e^{-b^2/2}.
inline double marcum_q_three_halves(double a, double b) {
  const double sqrt_2_over_pi = 0.79788456080286535588;
  double base = marcum_q_half(a, b);
  double extra;
  if (a * b < 1e-8) {
    double ab = a * b;
    extra = sqrt_2_over_pi * b * std::exp(-0.5 * (a * a + b * b)) *
            (1.0 + ab * ab / 6.0);
  } else {
    double dm = b - a, dp = b + a;
    extra = sqrt_2_over_pi * (std::exp(-0.5 * dm * dm) - std::exp(-0.5 * dp * dp)) /
            (2.0 * a);
  }
  return clamp01(base + extra);
}

}  // namespace

double marcum_q_series(double order, double a, double b) {
  check_marcum_domain(order, a, b);
  if (b == 0.0) return 1.0;
  double lambda = 0.5 * a * a;  // Poisson mixing rate
  double y = 0.5 * b * b;
  if (lambda == 0.0) return detail::gamma_q(order, y);
  // Far beyond any realistic noncentrality the mixture window is impractical;
  // the order-independent a -> inf limit is exact to O(order / a) there.
  if (lambda > 1e14) return marcum_q_half(a, b);

  // Sum w_k * Q(order + k, y) outward from the modal Poisson weight. All
  // terms are positive and bounded by w_k, so the truncation error is
  // bounded by the unexplored Poisson mass. The final division by the
  // accumulated mass renormalizes against the log-space anchor error of
  // lgamma at large lambda (the weights sum to one exactly).
  long k0 = static_cast<long>(std::floor(lambda));
  double log_w0 = -lambda + static_cast<double>(k0) * std::log(lambda) -
                  std::lgamma(static_cast<double>(k0) + 1.0);
  double w0 = std::exp(log_w0);

  double sum = w0 * detail::gamma_q(order + static_cast<double>(k0), y);
  double wmass = w0;

  double w = w0;
  for (long k = k0 + 1; k < k0 + 2000000; ++k) {
    w *= lambda / static_cast<double>(k);
    if (w < wmass * 1e-19) break;
    sum += w * detail::gamma_q(order + static_cast<double>(k), y);
    wmass += w;
  }
  w = w0;
  for (long k = k0; k > 0; --k) {
    w *= static_cast<double>(k) / lambda;
    sum += w * detail::gamma_q(order + static_cast<double>(k) - 1.0, y);
    wmass += w;
    if (w < wmass * 1e-19) break;
  }
  return clamp01(sum / wmass);
}

double marcum_q(double order, double a, double b) {
  check_marcum_domain(order, a, b);
  if (b == 0.0) return 1.0;
  if (order == 0.5) return marcum_q_half(a, b);
  if (order == 1.5) {
    if (a < 1e-4) return marcum_q_series(order, a, b);
    return marcum_q_three_halves(a, b);
  }
  return marcum_q_series(order, a, b);
}

double noncentral_chi2_cdf(double dof, double lambda, double x) {
  if (!(dof > 0.0) || !std::isfinite(dof))
    throw std::domain_error("noncentral_chi2_cdf: dof must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("noncentral_chi2_cdf: noncentrality must be finite and >= 0");
  if (std::isnan(x)) throw std::domain_error("noncentral_chi2_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  double half = 0.5 * lambda;
  double y = 0.5 * x;
  if (half == 0.0) return detail::gamma_p(0.5 * dof, y);
  // Mirror of the Marcum large-noncentrality fallback (see marcum_q_series).
  if (half > 1e14)
    return clamp01(1.0 - marcum_q_half(std::sqrt(lambda), std::sqrt(x)));

  // Same bidirectional Poisson mixture as the Marcum series, including the
  // mass renormalization (see marcum_q_series).
  long k0 = static_cast<long>(std::floor(half));
  double log_w0 = -half + static_cast<double>(k0) * std::log(half) -
                  std::lgamma(static_cast<double>(k0) + 1.0);
  double w0 = std::exp(log_w0);

  double sum = w0 * detail::gamma_p(0.5 * dof + static_cast<double>(k0), y);
  double w = w0;
  double wmass = w0;
  for (long k = k0 + 1; k < k0 + 2000000; ++k) {
    w *= half / static_cast<double>(k);
    if (w < wmass * 1e-19) break;
    sum += w * detail::gamma_p(0.5 * dof + static_cast<double>(k), y);
    wmass += w;
  }
  w = w0;
  for (long k = k0; k > 0; --k) {
    w *= static_cast<double>(k) / half;
    sum += w * detail::gamma_p(0.5 * dof + static_cast<double>(k) - 1.0, y);
    wmass += w;
    if (w < wmass * 1e-19) break;
  }
  return clamp01(sum / wmass);
}

}  // namespace riscov
