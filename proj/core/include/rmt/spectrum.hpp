#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmt/errors.hpp"

namespace rmt {

// Eigenvalues of one sample, sorted ascending, in the paper normalization
// (bulk supported on approximately [-1, 1]).
struct Spectrum {
  int n = 0;
  std::vector<double> values;  // ascending

  static Spectrum from_unsorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    Spectrum s;
    s.n = static_cast<int>(v.size());
    s.values = std::move(v);
    return s;
  }

  double min() const { return values.front(); }
  double max() const { return values.back(); }

  // k-th smallest, 1-based (matching the eigenvalue-number convention).
  double kth(int k) const {
    if (k < 1 || k > n) throw DomainError("Spectrum::kth: index out of range");
    return values[static_cast<std::size_t>(k) - 1];
  }

  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }

  double sum_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }
};

// Collapse the doubled spectrum of a real-embedded Hermitian matrix back to
// the n distinct eigenvalues. Consecutive sorted values must pair up to
// 1e-10 relative; a violation means the embedding or the solver is broken.
inline Spectrum dedupe_embedded(const Spectrum& s) {
  if (s.n % 2 != 0) throw DomainError("dedupe_embedded: odd spectrum size");
  const double scale = std::max(std::abs(s.values.front()), std::abs(s.values.back()));
  Spectrum out;
  out.n = s.n / 2;
  out.values.reserve(out.n);
  for (int i = 0; i < s.n; i += 2) {
    const double a = s.values[i];
    const double b = s.values[i + 1];
    if (std::abs(b - a) > 1e-10 * std::max(scale, 1e-8)) {
      throw NumericError("dedupe_embedded: sorted eigenvalues do not pair up");
    }
    out.values.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace rmt
