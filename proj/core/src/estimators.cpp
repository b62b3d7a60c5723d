#include "rmt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

double normalize_bulk(const Spectrum& spec, int k, int n) {
  if (spec.n != n) throw DomainError("normalize_bulk: spectrum size does not match n");
  // Center at the continuity-corrected quantile G^{-1}((2k-1)/(2n)) rather
  // than G^{-1}(k/n): the k-th order statistic of a rigid point process sits
  // half a spacing below the naive quantile, and at desk scale that offset
  // is ~0.85 fluctuation units (it decays only like 1/sqrt(ln n)). The two
  // centerings agree in the n -> infinity limit the theorem speaks about.
  const double center = semicircle_quantile((2.0 * k - 1.0) / (2.0 * n));
  const double sigma = bulk_sigma(k, n);  // propagates the edge-regime error
  return (spec.kth(k) - center) / sigma;
}

double rescale_edge(const Spectrum& spec, int n) {
  if (spec.n < 1) throw DomainError("rescale_edge: empty spectrum");
  return (spec.max() - 1.0) * 2.0 * std::pow(static_cast<double>(n), 2.0 / 3.0);
}

double trace_moment(const Spectrum& spec, int p) {
  if (p < 2 || p % 2 != 0) {
    throw DomainError("trace_moment: p must be an even integer >= 2");
  }
  // Neumaier compensated summation: the terms span many orders of magnitude
  double sum = 0.0, comp = 0.0;
  for (double v : spec.values) {
    const double term = std::pow(v, p);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  sum += comp;
  return sum * std::pow(static_cast<double>(p), 1.5) / static_cast<double>(spec.n);
}

EdgeMeasurePoints edge_measure(const Spectrum& spec, double r_n, double window_max) {
  if (!(r_n > 0.0)) throw DomainError("edge_measure: r_n must be positive");
  const double n = static_cast<double>(spec.n);
  if (r_n * std::pow(n, 2.0 / 3.0) < 1.0) {
    throw DomainError("edge_measure: need r_n * n^{2/3} >= 1 (the rescaling regime)");
  }
  EdgeMeasurePoints out;
  out.mass = 1.0 / (n * std::pow(r_n, 1.5));
  out.window_max = window_max;
  // theta in [0, window_max] <=> lambda in [1 - r_n window_max, 1]
  for (auto it = spec.values.rbegin(); it != spec.values.rend(); ++it) {
    const double theta = (1.0 - *it) / r_n;
    if (theta < 0.0) continue;
    if (theta > window_max) break;  // values descend from here on
    out.thetas.push_back(theta);
  }
  return out;
}

CorrelationEstimate pair_correlation(const std::vector<Spectrum>& spectra, double half_width,
                                     int bins, double y_max) {
  if (spectra.size() < 50) throw DomainError("pair_correlation: need at least 50 spectra");
  if (!(half_width > 0.0 && half_width <= 0.1)) {
    throw DomainError("pair_correlation: half_width must lie in (0, 0.1]");
  }
  if (bins < 1) throw DomainError("pair_correlation: need at least one bin");

  const int n = spectra.front().n;
  const double rho0 = 2.0 * n / std::numbers::pi;  // semicircle density at 0
  const double dy = y_max / bins;

  CorrelationEstimate est;
  est.n = n;
  est.reps = static_cast<int>(spectra.size());
  est.half_width = half_width;
  est.y_max = y_max;
  est.bin_centers.resize(bins);
  est.counts.assign(bins, 0);
  for (int b = 0; b < bins; ++b) est.bin_centers[b] = (b + 0.5) * dy;

  for (const Spectrum& s : spectra) {
    if (s.n != n) throw DomainError("pair_correlation: mixed spectrum sizes");
    const auto lo = std::lower_bound(s.values.begin(), s.values.end(), -half_width);
    const auto hi = std::upper_bound(s.values.begin(), s.values.end(), half_width);
    for (auto i = lo; i != hi; ++i) {
      for (auto j = i + 1; j != hi; ++j) {
        const double y = (*j - *i) * rho0;
        if (y >= y_max) break;  // sorted: later j only grow
        const int b = static_cast<int>(y / dy);
        if (b >= 0 && b < bins) ++est.counts[b];
      }
    }
  }

  // Expected pairs per bin for a Poisson process of constant intensity rho0
  // on the window: rho0^2 * integral over separations of (2w - delta).
  est.values.resize(bins);
  est.flagged.resize(bins);
  const double w = half_width;
  for (int b = 0; b < bins; ++b) {
    const double da = b * dy / rho0;        // separation in lambda units
    const double db = (b + 1) * dy / rho0;
    const double expected_one = rho0 * rho0 * ((2.0 * w) * (db - da) - 0.5 * (db * db - da * da));
    const double expected = expected_one * static_cast<double>(spectra.size());
    est.values[b] = expected > 0.0 ? est.counts[b] / expected : 0.0;
    est.flagged[b] = est.counts[b] < 20;
  }
  return est;
}

double gap_correlation(const std::vector<Spectrum>& spectra, int k1, int k2, int n) {
  if (spectra.size() < 500) throw DomainError("gap_correlation: need at least 500 spectra");
  const double m = static_cast<double>(spectra.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(spectra.size()), ys(spectra.size());
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    xs[i] = normalize_bulk(spectra[i], k1, n);
    ys[i] = normalize_bulk(spectra[i], k2, n);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double cxx = 0.0, cyy = 0.0, cxy = 0.0;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const double dx = xs[i] - mx, dyv = ys[i] - my;
    cxx += dx * dx;
    cyy += dyv * dyv;
    cxy += dx * dyv;
  }
  if (cxx <= 0.0 || cyy <= 0.0) {
    throw NumericError("gap_correlation: degenerate variance");
  }
  return cxy / std::sqrt(cxx * cyy);
}

long counting_statistic(const Spectrum& spec, double a, double b) {
  if (!(a < b)) throw DomainError("counting_statistic: need a < b");
  const auto lo = std::lower_bound(spec.values.begin(), spec.values.end(), a);
  const auto hi = std::upper_bound(spec.values.begin(), spec.values.end(), b);
  return static_cast<long>(hi - lo);
}

IntervalProbability interval_probability(const std::vector<double>& samples, double b, double c,
                                         int n) {
  if (samples.empty()) throw DomainError("interval_probability: empty sample");
  if (!(b < c)) throw DomainError("interval_probability: need b < c");
  const double scale = std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
  const double lo = b * scale, hi = c * scale;
  long count = 0;
  for (double x : samples) {
    if (x >= lo && x <= hi) ++count;
  }
  IntervalProbability out;
  out.count = count;
  out.total = static_cast<long>(samples.size());
  out.p = static_cast<double>(count) / static_cast<double>(out.total);
  out.std_err = std::sqrt(out.p * (1.0 - out.p) / static_cast<double>(out.total));
  return out;
}

}  // namespace rmt
