#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {

// sin(pi r) / (pi r) with the removable singularity filled in
double sinc_pi(double r) {
  const double x = std::numbers::pi * r;
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void check_beta(int beta) {
  if (beta != 1 && beta != 2) throw DomainError("beta must be 1 or 2");
}

}  // namespace

double sine_kernel(double y, double z, int beta) {
  check_beta(beta);
  if (!std::isfinite(y) || !std::isfinite(z)) throw DomainError("sine_kernel: non-finite argument");
  const double k = sinc_pi(y - z);
  if (beta == 2) return k;
  return k + sinc_pi(y + z);
}

double r_k_det(const std::vector<double>& points, int beta) {
  check_beta(beta);
  const int k = static_cast<int>(points.size());
  if (k < 1 || k > 6) throw DomainError("r_k_det: supports 1 <= k <= 6 points");

  double a[6][6];
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = sine_kernel(points[i], points[j], beta);
  }
  // LU with partial pivoting
  double det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(a[c][j], a[piv][j]);
      det = -det;
    }
    if (a[c][c] == 0.0) return 0.0;
    det *= a[c][c];
    for (int r = c + 1; r < k; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int j = c; j < k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

double joint_logdensity(const std::vector<double>& lambdas, int beta, int n) {
  check_beta(beta);
  if (n < 1) throw DomainError("joint_logdensity: n must be >= 1");
  const std::size_t m = lambdas.size();
  for (double l : lambdas) {
    if (!std::isfinite(l)) throw DomainError("joint_logdensity: non-finite eigenvalue");
  }
  double log_vandermonde = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double gap = std::abs(lambdas[i] - lambdas[j]);
      if (gap == 0.0) return -std::numeric_limits<double>::infinity();
      log_vandermonde += std::log(gap);
    }
  }
  double sum_sq = 0.0;
  for (double l : lambdas) sum_sq += l * l;
  return beta * log_vandermonde - beta * static_cast<double>(n) * sum_sq;
}

}  // namespace rmt
