#pragma once

#include <vector>

#include "rmt/spectrum.hpp"

namespace rmt {

// Gustavsson bulk normalization of the k-th eigenvalue:
// (values[k-1] - center) / bulk_sigma(k, n), with the center at the
// continuity-corrected classical location G^{-1}((2k-1)/(2n)) so the
// statistic is mean-zero at finite n (see the implementation note).
double normalize_bulk(const Spectrum& spec, int k, int n);

// Edge rescaling (lambda_max - 1) * 2 n^{2/3}.
double rescale_edge(const Spectrum& spec, int n);

// Trace-moment statistic (sum_i lambda_i^p) p^{3/2} / n with compensated
// summation; p must be even and >= 2 (odd raw moments vanish in
// expectation, the limit statement concerns even p).
double trace_moment(const Spectrum& spec, int p);

// Rescaled edge point measure: theta_k = (1 - lambda_k) / r_n for theta_k in
// [0, window_max], each carrying mass 1 / (n r_n^{3/2}).
struct EdgeMeasurePoints {
  std::vector<double> thetas;
  double mass = 0.0;  // per point
  double window_max = 0.0;
};
EdgeMeasurePoints edge_measure(const Spectrum& spec, double r_n, double window_max = 2.0);

// Pair-correlation estimate around the spectral center. Eigenvalues in
// [-half_width, half_width] are collected, pair separations rescaled by the
// central density rho_1(0) = 2n/pi, binned over (0, y_max], and each bin
// normalized by the count expected under independence so the estimator
// targets R_2(y). Bins with fewer than 20 pairs are flagged and excluded
// from comparisons.
struct CorrelationEstimate {
  std::vector<double> bin_centers;
  std::vector<double> values;   // estimated R_2
  std::vector<long> counts;     // pairs per bin
  std::vector<bool> flagged;    // too few pairs
  int n = 0;
  int reps = 0;
  double half_width = 0.0;
  double y_max = 0.0;
};
CorrelationEstimate pair_correlation(const std::vector<Spectrum>& spectra, double half_width,
                                     int bins, double y_max = 3.0);

// Pearson correlation of the Gustavsson-normalized coordinates of the k1-th
// and k2-th eigenvalues across replicates.
double gap_correlation(const std::vector<Spectrum>& spectra, int k1, int k2, int n);

// Number of eigenvalues in [a, b] (binary search on the sorted values).
long counting_statistic(const Spectrum& spec, double a, double b);

// Empirical frequency of b sqrt(ln n)/sqrt(n) <= x <= c sqrt(ln n)/sqrt(n)
// over realizations of one designated bulk eigenvalue, with its binomial
// standard error.
struct IntervalProbability {
  double p = 0.0;
  double std_err = 0.0;
  long count = 0;
  long total = 0;
};
IntervalProbability interval_probability(const std::vector<double>& samples, double b, double c,
                                         int n);

}  // namespace rmt
