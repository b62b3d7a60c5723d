#include "rmt/ks.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

double kolmogorov_p_value(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  const double p = 2.0 * sum;
  if (p < 0.0) return 0.0;
  return p > 1.0 ? 1.0 : p;
}

KsResult ks_one_sample(std::vector<double> sample, const ReferenceCdf& cdf) {
  if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
  for (double x : sample) {
    if (!std::isfinite(x)) throw DomainError("ks_one_sample: non-finite sample value");
  }
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double upper = (static_cast<double>(i) + 1.0) / m - f;
    const double lower = f - static_cast<double>(i) / m;
    d = std::max(d, std::max(upper, lower));
  }
  KsResult r;
  r.d = d;
  r.n_eff = m;
  r.p_value = kolmogorov_p_value(std::sqrt(m) * d);
  return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.d = d;
  r.n_eff = na * nb / (na + nb);
  r.p_value = kolmogorov_p_value(std::sqrt(r.n_eff) * d);
  return r;
}

}  // namespace rmt
