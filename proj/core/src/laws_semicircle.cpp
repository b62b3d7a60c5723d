#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double semicircle_cdf(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / kPi;
}

double semicircle_pdf(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return (2.0 / kPi) * std::sqrt(1.0 - t * t);
}

namespace {

// solve G(t) = p on [-1, 0] for p <= 1/2
double quantile_lower_half(double p) {
  double lo = -1.0, hi = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  // Newton polish; the derivative only degenerates at the support endpoints
  for (int it = 0; it < 3; ++it) {
    const double dens = semicircle_pdf(t);
    if (dens < 1e-8) break;
    const double step = (semicircle_cdf(t) - p) / dens;
    const double next = t - step;
    if (next <= -1.0 || next >= 0.0) break;
    t = next;
  }
  return t;
}

}  // namespace

double semicircle_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("semicircle_quantile: p must lie strictly in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  // mirror the upper half so that quantile(1-p) == -quantile(p) exactly
  if (p > 0.5) return -quantile_lower_half(1.0 - p);
  return quantile_lower_half(p);
}

double classical_location(int k, int n) {
  if (n < 2) throw DomainError("classical_location: n must be >= 2");
  if (k < 1 || k > n - 1) {
    throw DomainError("classical_location: k must satisfy 1 <= k <= n-1");
  }
  return semicircle_quantile(static_cast<double>(k) / n);
}

double expected_count(double a, double b, int n) {
  if (!(a < b)) throw DomainError("expected_count: need a < b");
  return n * (semicircle_cdf(b) - semicircle_cdf(a));
}

double edge_measure_density(double x) {
  if (x < 0.0) return 0.0;
  return (2.0 * std::sqrt(2.0) / kPi) * std::sqrt(x);
}

}  // namespace rmt
