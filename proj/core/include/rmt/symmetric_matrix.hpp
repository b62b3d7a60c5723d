#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rmt/errors.hpp"

namespace rmt {

// Real symmetric matrix A = (xi_ij / sqrt(n)). Only the n(n+1)/2 free raw
// entries xi_ij (i <= j) are stored, so a_ij == a_ji holds by construction;
// the 1/sqrt(n) scale is applied on read.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n)
      : n_(n), scale_(0.0), xi_(n > 0 ? static_cast<std::size_t>(n) * (n + 1) / 2 : 0, 0.0) {
    if (n < 1) throw DomainError("SymmetricMatrix: dimension must be >= 1");
    scale_ = 1.0 / std::sqrt(static_cast<double>(n));
  }

  int dim() const { return n_; }
  double scale() const { return scale_; }

  // Raw entry xi_ij (order of i, j irrelevant).
  double raw(int i, int j) const { return xi_[index(i, j)]; }
  double& raw(int i, int j) { return xi_[index(i, j)]; }

  // Scaled entry a_ij = xi_ij / sqrt(n).
  double operator()(int i, int j) const { return scale_ * xi_[index(i, j)]; }

  std::vector<double>& raw_data() { return xi_; }
  const std::vector<double>& raw_data() const { return xi_; }

  // Sum over the free entries: sum_{i<=j} xi_ij^2.
  double sum_sq_raw() const {
    double s = 0.0;
    for (double x : xi_) s += x * x;
    return s;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  // ||A||_F^2 with off-diagonal entries counted twice.
  double frobenius_sq() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        const double a = (*this)(i, j);
        s += (i == j) ? a * a : 2.0 * a * a;
      }
    }
    return s;
  }

  bool all_finite() const {
    for (double x : xi_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // packed upper triangle, row-major
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 - i +
           static_cast<std::size_t>(j);
  }

  int n_;
  double scale_;
  std::vector<double> xi_;
};

// Radial shell in the raw-entry coordinates: with c = n(n+1)/8 (the mean of
// sum xi^2 at variance 1/4),
//
//   max(0, c - m_lower * n)  <=  sum_{i<=j} xi_ij^2  <=  c + m_upper * n.
//
// The lower radius clamps at zero: for small n the nominal bound c - M2*n is
// negative and the shell degenerates to a ball.
struct ShellSpec {
  double m_lower = 1.0;  // M2, in units of n below the center
  double m_upper = 1.0;  // M1, in units of n above the center

  void validate() const {
    if (!(m_lower > 0.0) || !(m_upper > 0.0)) {
      throw ConfigError("ShellSpec: m_lower and m_upper must be positive");
    }
  }

  double center(int n) const { return static_cast<double>(n) * (n + 1) / 8.0; }
  double lo(int n) const {
    const double v = center(n) - m_lower * n;
    return v > 0.0 ? v : 0.0;
  }
  double hi(int n) const { return center(n) + m_upper * n; }

  bool contains(int n, double sum_sq) const { return sum_sq >= lo(n) && sum_sq <= hi(n); }
};

}  // namespace rmt
