#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

double bulk_sigma(int k, int n) {
  if (n < 3) throw DomainError("bulk_sigma: n must be >= 3");
  const double t = classical_location(k, n);
  if (std::abs(t) > 0.99) {
    throw DomainError("bulk_sigma: classical location |t| > 0.99 is in the edge regime; "
                      "use edge_center_scale");
  }
  return std::sqrt(std::log(static_cast<double>(n)) /
                   (8.0 * static_cast<double>(n) * n * (1.0 - t * t)));
}

std::pair<double, double> edge_center_scale(int k, int n) {
  if (k < 2) throw DomainError("edge_center_scale: k must be >= 2 (ln k > 0)");
  if (k >= n) throw DomainError("edge_center_scale: k must be below n");
  const double kd = k, nd = n;
  const double pi = std::numbers::pi;
  const double center = 1.0 - std::pow(3.0 * pi * kd / (4.0 * std::sqrt(2.0) * nd), 2.0 / 3.0);
  const double scale_sq =
      std::pow(1.0 / (12.0 * pi), 2.0 / 3.0) * std::log(kd) / (std::cbrt(nd) * std::pow(kd, 2.0 / 3.0));
  const double scale = std::sqrt(scale_sq) / std::sqrt(2.0 * nd);
  return {center, scale};
}

}  // namespace rmt
