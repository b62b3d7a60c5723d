#include "rmt/oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {

// ---------------------------------------------------------------------------
// Oracle-private Airy evaluation. Deliberately a different route from
// laws::airy (which this oracle exists to cross-check through tw2_cdf):
// Taylor-coefficient marching of the ODE y'' = t y from the origin, plus the
// decaying asymptotic expansion on the far positive axis where marching
// would be contaminated by the growing solution.
// ---------------------------------------------------------------------------

struct Pair {
  long double ai;
  long double aip;
};

// One Taylor step of y'' = t y from t0 to t0 + h given (y, y') at t0.
// Coefficients: (k+2)(k+1) c_{k+2} = t0 c_k + c_{k-1}.
Pair taylor_step(long double t0, Pair y, long double h) {
  constexpr int kOrder = 26;
  long double c[kOrder + 1];
  c[0] = y.ai;
  c[1] = y.aip;
  for (int k = 0; k + 2 <= kOrder; ++k) {
    const long double prev = (k >= 1) ? c[k - 1] : 0.0L;
    c[k + 2] = (t0 * c[k] + prev) / ((k + 2.0L) * (k + 1.0L));
  }
  long double v = 0.0L, dv = 0.0L;
  for (int k = kOrder; k >= 0; --k) v = v * h + c[k];
  for (int k = kOrder; k >= 1; --k) dv = dv * h + k * c[k];
  return {v, dv};
}

Pair march_from_origin(double t) {
  // Ai(0), Ai'(0); shared mathematical constants, not shared code.
  Pair y{0.35502805388781723926L, -0.25881940379280679841L};
  if (t == 0.0) return y;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / 0.25)));
  const long double h = static_cast<long double>(t) / steps;
  long double pos = 0.0L;
  for (int i = 0; i < steps; ++i) {
    y = taylor_step(pos, y, h);
    pos += h;
  }
  return y;
}

Pair asymptotic_decaying(double t) {
  // DLMF 9.7.5/9.7.6 with optimal truncation; relative error ~1e-9 at t = 5
  // and improving rapidly beyond.
  const long double x = t;
  const long double z = (2.0L / 3.0L) * x * std::sqrt(x);
  long double u = 1.0L, su = 0.0L, sv = 0.0L;
  long double zk = 1.0L;
  long double prev = 1e30L;
  for (int k = 0; k < 40; ++k) {
    const long double v = (k == 0) ? 1.0L : -u * (6.0L * k + 1.0L) / (6.0L * k - 1.0L);
    const long double term = u / zk;
    if (std::abs((double)term) > std::abs((double)prev)) break;
    const int sgn = (k % 2 == 0) ? 1 : -1;
    su += sgn * term;
    sv += sgn * v / zk;
    prev = term;
    zk *= z;
    u = u * (6.0L * k + 5.0L) * (6.0L * k + 1.0L) / (72.0L * (k + 1.0L));
  }
  const long double root4 = std::pow(x, 0.25L);
  const long double pref = std::exp(-z) / (2.0L * std::sqrt((long double)std::numbers::pi));
  return {pref * su / root4, -pref * root4 * sv};
}

Pair oracle_airy(double t) {
  if (t > 5.0) return asymptotic_decaying(t);
  return march_from_origin(t);
}

// Airy kernel K(s, u) = (Ai(s) Ai'(u) - Ai'(s) Ai(u)) / (s - u), with the
// confluent limit Ai'(m)^2 - m Ai(m)^2 on the diagonal.
double airy_kernel(const Pair& fs, const Pair& fu, double s, double u) {
  const double delta = s - u;
  if (std::abs(delta) < 1e-7) {
    const double m = 0.5 * (s + u);
    const double ai = 0.5 * (double)(fs.ai + fu.ai);
    const double aip = 0.5 * (double)(fs.aip + fu.aip);
    return aip * aip - m * ai * ai;
  }
  return (double)(fs.ai * fu.aip - fs.aip * fu.ai) / delta;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

// det(I - M) via LU with partial pivoting, in place.
double det_identity_minus(std::vector<double>& m, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i) * n + j] =
          (i == j ? 1.0 : 0.0) - m[static_cast<std::size_t>(i) * n + j];
    }
  }
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m[static_cast<std::size_t>(r) * n + c]) >
          std::abs(m[static_cast<std::size_t>(piv) * n + c]))
        piv = r;
    }
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[static_cast<std::size_t>(c) * n + j], m[static_cast<std::size_t>(piv) * n + j]);
      }
      det = -det;
    }
    const double pivot = m[static_cast<std::size_t>(c) * n + c];
    if (pivot == 0.0) return 0.0;
    det *= pivot;
    for (int r = c + 1; r < n; ++r) {
      const double f = m[static_cast<std::size_t>(r) * n + c] / pivot;
      for (int j = c; j < n; ++j) {
        m[static_cast<std::size_t>(r) * n + j] -= f * m[static_cast<std::size_t>(c) * n + j];
      }
    }
  }
  return det;
}

}  // namespace

double airy_kernel_fredholm_tw2(double x, int order) {
  if (!(x >= -10.0 && x <= 8.0)) {
    throw DomainError("airy_kernel_fredholm_tw2: x outside [-10, 8]");
  }
  if (order < 20 || order > 200) {
    throw DomainError("airy_kernel_fredholm_tw2: order outside [20, 200]");
  }
  constexpr double kWindow = 20.0;  // analytic tail neglect past x + 20

  std::vector<double> nodes, weights;
  gauss_legendre(order, nodes, weights);

  std::vector<double> t(order), sq(order);
  std::vector<Pair> f(order);
  for (int i = 0; i < order; ++i) {
    t[i] = x + 0.5 * kWindow * (nodes[i] + 1.0);
    sq[i] = std::sqrt(0.5 * kWindow * weights[i]);
    f[i] = oracle_airy(t[i]);
  }

  std::vector<double> m(static_cast<std::size_t>(order) * order);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      m[static_cast<std::size_t>(i) * order + j] =
          sq[i] * sq[j] * airy_kernel(f[i], f[j], t[i], t[j]);
    }
  }
  return det_identity_minus(m, order);
}

double airy_kernel_fredholm_tw2_checked(double x, int order) {
  const double coarse = airy_kernel_fredholm_tw2(x, order / 2);
  const double fine = airy_kernel_fredholm_tw2(x, order);
  if (std::abs(fine - coarse) >= 1e-8) {
    throw OracleError("airy_kernel_fredholm_tw2: no self-convergence between orders " +
                      std::to_string(order / 2) + " and " + std::to_string(order));
  }
  return fine;
}

// ---------------------------------------------------------------------------
// Small-n event probabilities by nested ordered quadrature
// ---------------------------------------------------------------------------

namespace {

// Nested Gauss-Legendre over the ordered sector -2 <= l_1 <= ... <= l_n <= 2
// with coordinate k confined to [a, b]; the integrand (the unnormalized
// joint density) is smooth there, unlike on the full cube where |l_i - l_j|
// kinks for beta = 1.
class OrderedIntegrator {
 public:
  OrderedIntegrator(int n, int beta, int k, double a, double b, int points)
      : n_(n), beta_(beta), k_(k), a_(a), b_(b) {
    gauss_legendre(points, nodes_, weights_);
    lambda_.resize(n);
  }

  double run() { return level(0, -2.0); }

 private:
  double level(int j, double lower) {
    double lo = lower, hi = 2.0;
    if (j + 1 == k_) {  // 0-based level for the k-th smallest
      lo = std::max(lo, a_);
      hi = std::min(hi, b_);
    }
    if (!(lo < hi)) return 0.0;
    // the event limits put C0 kinks into the inner integrals; integrating
    // piecewise between the breakpoints keeps every segment smooth
    double cuts[4] = {lo, hi, hi, hi};
    int ncuts = 2;
    for (double c : {a_, b_}) {
      if (c > lo && c < hi) cuts[ncuts++] = c;
    }
    std::sort(cuts, cuts + ncuts);
    double total = 0.0;
    for (int seg = 0; seg + 1 < ncuts; ++seg) {
      const double s_lo = cuts[seg], s_hi = cuts[seg + 1];
      if (!(s_lo < s_hi)) continue;
      const double mid = 0.5 * (s_lo + s_hi), half = 0.5 * (s_hi - s_lo);
      double sum = 0.0;
      for (std::size_t q = 0; q < nodes_.size(); ++q) {
        lambda_[j] = mid + half * nodes_[q];
        const double inner = (j + 1 == n_) ? density() : level(j + 1, lambda_[j]);
        sum += weights_[q] * inner;
      }
      total += half * sum;
    }
    return total;
  }

  double density() const {
    double v = 1.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        double gap = lambda_[j] - lambda_[i];
        v *= (beta_ == 2) ? gap * gap : gap;
      }
    }
    double ss = 0.0;
    for (int i = 0; i < n_; ++i) ss += lambda_[i] * lambda_[i];
    return v * std::exp(-static_cast<double>(beta_) * n_ * ss);
  }

  int n_, beta_, k_;
  double a_, b_;
  std::vector<double> nodes_, weights_;
  std::vector<double> lambda_;
};

}  // namespace

double smalln_event_probability(int n, int beta, int k, double a, double b) {
  if (n < 1 || n > 3) throw DomainError("smalln_event_probability: supports n <= 3");
  if (beta != 1 && beta != 2) throw DomainError("smalln_event_probability: beta must be 1 or 2");
  if (k < 1 || k > n) throw DomainError("smalln_event_probability: k out of range");
  if (!(a < b)) throw DomainError("smalln_event_probability: need a < b");

  auto estimate = [&](int points) {
    const double numer = OrderedIntegrator(n, beta, k, a, b, points).run();
    const double denom = OrderedIntegrator(n, beta, k, -2.0, 2.0, points).run();
    if (!(denom > 0.0)) throw OracleError("smalln_event_probability: normalization failed");
    return numer / denom;
  };
  const double coarse = estimate(48);
  const double fine = estimate(96);
  if (std::abs(fine - coarse) > 5e-5) {
    throw OracleError("smalln_event_probability: grid refinement did not settle");
  }
  return fine;
}

// ---------------------------------------------------------------------------
// Shell probability via the regularized incomplete gamma
// ---------------------------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int it = 0; it < 10000; ++it) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  // Lentz's algorithm for the continued fraction of Q(a, x)
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_p: a must be positive");
  if (x < 0.0) throw DomainError("gamma_p: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi_shell_probability(int n, const ShellSpec& shell) {
  shell.validate();
  if (n < 1) throw DomainError("chi_shell_probability: n must be >= 1");
  const double d = static_cast<double>(n) * (n + 1) / 2.0;
  // sum xi^2 = (1/4) chi^2_d  =>  P(sum <= s) = P(chi^2_d <= 4 s)
  const double upper = gamma_p(d / 2.0, 2.0 * shell.hi(n));
  const double lower = shell.lo(n) > 0.0 ? gamma_p(d / 2.0, 2.0 * shell.lo(n)) : 0.0;
  return upper - lower;
}

}  // namespace rmt
