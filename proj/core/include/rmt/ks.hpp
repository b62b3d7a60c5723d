#pragma once

#include <vector>

#include "rmt/reference_cdf.hpp"

namespace rmt {

struct KsResult {
  double d = 0.0;        // supremum distance
  double p_value = 1.0;  // asymptotic Kolmogorov p-value
  double n_eff = 0.0;    // effective sample size
};

// Complementary Kolmogorov CDF: 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2),
// truncated when terms drop below 1e-12, clamped to [0, 1].
double kolmogorov_p_value(double t);

// One-sample KS against a reference CDF; D takes both one-sided gaps at each
// sample point, p-value from the asymptotic series with t = sqrt(m) D.
KsResult ks_one_sample(std::vector<double> sample, const ReferenceCdf& cdf);

// Two-sample KS; effective size m n / (m + n).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace rmt
