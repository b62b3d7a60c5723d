#include "rmt/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {

// Taylor coefficients of the solution of u'' = t u + 2 u^3 around t0, given
// (u, u') there. With u = sum c_k s^k and u^3 = sum d_k s^k,
//   (k+2)(k+1) c_{k+2} = t0 c_k + c_{k-1} + 2 d_k,
// where d_k comes from two running Cauchy products. The Hastings-McLeod
// solution is a separatrix whose downstream error amplification reaches
// ~exp(0.943 |t|^{3/2}); a high-order series step keeps the local truncation
// error at the extended-precision roundoff floor, which a fixed-order
// Runge-Kutta pair cannot.
struct TaylorStep {
  static constexpr int kOrder = 22;
  long double c[kOrder + 1];

  TaylorStep(long double t0, long double u, long double v) {
    long double e[kOrder + 1];  // u^2
    long double d[kOrder + 1];  // u^3
    c[0] = u;
    c[1] = v;
    for (int k = 0; k + 2 <= kOrder; ++k) {
      // e_k, d_k need c_0..c_k which are known by now
      long double ek = 0.0L;
      for (int i = 0; i <= k; ++i) ek += c[i] * c[k - i];
      e[k] = ek;
      long double dk = 0.0L;
      for (int i = 0; i <= k; ++i) dk += c[i] * e[k - i];
      d[k] = dk;
      const long double prev = (k >= 1) ? c[k - 1] : 0.0L;
      c[k + 2] = (t0 * c[k] + prev + 2.0L * dk) / ((k + 2.0L) * (k + 1.0L));
    }
  }

  long double value(long double h) const {
    long double v = 0.0L;
    for (int k = kOrder; k >= 0; --k) v = v * h + c[k];
    return v;
  }
  long double derivative(long double h) const {
    long double v = 0.0L;
    for (int k = kOrder; k >= 1; --k) v = v * h + k * c[k];
    return v;
  }
  long double tail_estimate(long double h) const {
    long double hk = 1.0L;
    for (int k = 0; k < kOrder - 1; ++k) hk *= (h < 0 ? -h : h);
    const long double t1 = std::abs((double)c[kOrder - 1]) * hk;
    const long double t2 = std::abs((double)c[kOrder]) * hk * (h < 0 ? -h : h);
    return t1 + t2;
  }
};

std::size_t locate(const std::vector<double>& grid_desc, double x) {
  // grid is descending; find i with grid[i] >= x >= grid[i+1]
  auto it = std::lower_bound(grid_desc.begin(), grid_desc.end(), x, std::greater<double>());
  std::size_t i = static_cast<std::size_t>(it - grid_desc.begin());
  if (i > 0) --i;
  if (i + 1 >= grid_desc.size()) i = grid_desc.size() - 2;
  return i;
}

}  // namespace

double PainleveSolution::value(double x) const {
  if (!(x >= t_min && x <= t_max)) {
    throw DomainError("PainleveSolution::value: argument outside the stored grid");
  }
  const std::size_t i = locate(grid, x);
  const double t0 = grid[i], t1 = grid[i + 1];
  const double h = t1 - t0;  // negative
  const double s = (x - t0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * u[i] + h10 * h * u_prime[i] + h01 * u[i + 1] + h11 * h * u_prime[i + 1];
}

double PainleveSolution::derivative(double x) const {
  if (!(x >= t_min && x <= t_max)) {
    throw DomainError("PainleveSolution::derivative: argument outside the stored grid");
  }
  const std::size_t i = locate(grid, x);
  const double t0 = grid[i], t1 = grid[i + 1];
  const double h = t1 - t0;
  const double s = (x - t0) / h;
  const double g00 = (6 * s * s - 6 * s) / h;
  const double g10 = 3 * s * s - 4 * s + 1;
  const double g01 = (6 * s - 6 * s * s) / h;
  const double g11 = 3 * s * s - 2 * s;
  return g00 * u[i] + g10 * u_prime[i] + g01 * u[i + 1] + g11 * u_prime[i + 1];
}

PainleveSolution hastings_mcleod(double t_min, double t_max, double tol) {
  if (!(t_min < -2.0 && t_max > 2.0 && t_max <= 10.0)) {
    throw DomainError("hastings_mcleod: need t_min < -2 < 2 < t_max <= 10");
  }
  if (!(tol > 0.0)) throw DomainError("hastings_mcleod: tol must be positive");

  PainleveSolution sol;
  sol.t_min = t_min;
  sol.t_max = t_max;
  sol.tol = tol;

  const AiryValue boundary = airy(t_max);
  long double t = t_max;
  long double u = boundary.ai;
  long double v = boundary.ai_prime;

  sol.grid.push_back(t_max);
  sol.u.push_back(boundary.ai);
  sol.u_prime.push_back(boundary.ai_prime);

  // Work far below the requested tolerance; h also bounds the cubic
  // interpolation error of the stored grid (~h^4/384 * |u''''|).
  const long double tol_eff = std::min<long double>(tol, 1e-18L);
  const long double h_max = 0.01L;
  long double h = -h_max;

  while (t > (long double)t_min) {
    if (t + h < (long double)t_min) h = (long double)t_min - t;
    const TaylorStep step(t, u, v);
    if (step.tail_estimate(h) > tol_eff * std::max<long double>(1.0L, std::abs((double)u))) {
      h *= 0.5L;
      if (-h < 1e-6L) {
        throw NumericError("hastings_mcleod: step size underflow (left the Hastings-McLeod branch)");
      }
      continue;
    }
    u = step.value(h);
    v = step.derivative(h);
    t += h;

    if (!(std::abs((double)u) < 1e3)) {
      throw NumericError("hastings_mcleod: solution blow-up (wrong branch)");
    }
    if (u <= 0.0L) {
      throw NumericError("hastings_mcleod: solution crossed zero (oscillatory branch)");
    }

    sol.grid.push_back((double)t);
    sol.u.push_back((double)u);
    sol.u_prime.push_back((double)v);

    if (-h < h_max) h = std::max(h * 2.0L, -h_max);
  }

  return sol;
}

}  // namespace rmt
