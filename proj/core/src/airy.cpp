#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {

// Ai(0) = 3^{-2/3} / Gamma(2/3), Ai'(0) = -3^{-1/3} / Gamma(1/3)
constexpr long double kAi0 = 0.35502805388781723926L;
constexpr long double kAip0 = -0.25881940379280679841L;

// Maclaurin solution pair of y'' = t y:
//   f = sum a_k t^{3k},    a_k = a_{k-1} / ((3k-1) 3k)
//   g = sum b_k t^{3k+1},  b_k = b_{k-1} / (3k (3k+1))
// Ai = Ai(0) f + Ai'(0) g. Accumulated in long double; the alternating-sum
// cancellation up to |t| = 7 stays within budget that way.
AiryValue airy_series(double t) {
  const long double x = t;
  const long double x3 = x * x * x;
  long double f = 1.0L, fp = 0.0L;        // f and f'
  long double g = x, gp = 1.0L;           // g and g'
  long double a = 1.0L, b = x;
  for (int k = 1; k < 80; ++k) {
    a *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    b *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += a;
    g += b;
    fp += a * (3.0L * k) / x;       // d/dt of a_k t^{3k}
    gp += b * (3.0L * k + 1.0L) / x;
    if (std::abs((double)a) < 1e-24 && std::abs((double)b) < 1e-24) break;
  }
  if (t == 0.0) {  // the /x forms above are invalid at exactly zero
    return {(double)kAi0, (double)kAip0};
  }
  return {(double)(kAi0 * f + kAip0 * g), (double)(kAi0 * fp + kAip0 * gp)};
}

// u_k, v_k coefficients of the large-|t| expansions (DLMF 9.7):
// u_0 = 1, u_{k+1} = u_k (6k+5)(6k+1) / (72 (k+1)); v_k = -u_k (6k+1)/(6k-1).
constexpr int kAsymMax = 40;

struct AsymTables {
  long double u[kAsymMax];
  long double v[kAsymMax];
  AsymTables() {
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (int k = 0; k + 1 < kAsymMax; ++k) {
      u[k + 1] = u[k] * (6.0L * k + 5.0L) * (6.0L * k + 1.0L) / (72.0L * (k + 1.0L));
      v[k + 1] = -u[k + 1] * (6.0L * (k + 1) + 1.0L) / (6.0L * (k + 1) - 1.0L);
    }
  }
};
const AsymTables kTables;

// t > 0, exponentially decaying branch:
// Ai  ~  e^{-z} / (2 sqrt(pi) t^{1/4}) sum (-1)^k u_k z^-k
// Ai' ~ -e^{-z} t^{1/4} / (2 sqrt(pi)) sum (-1)^k v_k z^-k,  z = (2/3) t^{3/2}
AiryValue airy_asymptotic_pos(double t) {
  const long double x = t;
  const long double z = (2.0L / 3.0L) * x * std::sqrt(x);
  long double su = 0.0L, sv = 0.0L;
  long double zk = 1.0L;
  long double prev = 1e30L;
  for (int k = 0; k < kAsymMax; ++k) {
    const long double term = kTables.u[k] / zk;
    if (std::abs((double)term) > std::abs((double)prev)) break;  // optimal truncation
    su += (k % 2 == 0 ? term : -term);
    sv += (k % 2 == 0 ? kTables.v[k] / zk : -kTables.v[k] / zk);
    prev = term;
    zk *= z;
  }
  const long double root4 = std::pow(x, 0.25L);
  const long double pref = std::exp(-z) / (2.0L * std::sqrt((long double)std::numbers::pi));
  return {(double)(pref * su / root4), (double)(-pref * root4 * sv)};
}

// t < 0, oscillatory branch (s = -t):
// Ai(-s)  ~ (1 / (sqrt(pi) s^{1/4})) [ cos(z - pi/4) sum (-1)^k u_{2k} z^{-2k}
//                                    + sin(z - pi/4) sum (-1)^k u_{2k+1} z^{-2k-1} ]
// Ai'(-s) ~ (s^{1/4} / sqrt(pi))     [ sin(z - pi/4) sum (-1)^k v_{2k} z^{-2k}
//                                    - cos(z - pi/4) sum (-1)^k v_{2k+1} z^{-2k-1} ]
AiryValue airy_asymptotic_neg(double t) {
  const long double s = -static_cast<long double>(t);
  const long double z = (2.0L / 3.0L) * s * std::sqrt(s);
  long double ce = 0.0L, se = 0.0L;  // even/odd u-sums
  long double cv = 0.0L, sv = 0.0L;  // even/odd v-sums
  long double zk = 1.0L;
  for (int k = 0; k + 1 < kAsymMax; k += 2) {
    const long double even = kTables.u[k] / zk;
    const long double evenv = kTables.v[k] / zk;
    const long double odd = kTables.u[k + 1] / (zk * z);
    const long double oddv = kTables.v[k + 1] / (zk * z);
    const int sgn = (k / 2) % 2 == 0 ? 1 : -1;
    ce += sgn * even;
    se += sgn * odd;
    cv += sgn * evenv;
    sv += sgn * oddv;
    if (std::abs((double)even) < 1e-22) break;
    zk *= z * z;
  }
  const long double phase = z - (long double)std::numbers::pi / 4.0L;
  const long double c = std::cos(phase), sn = std::sin(phase);
  const long double root4 = std::pow(s, 0.25L);
  const long double pref = 1.0L / (std::sqrt((long double)std::numbers::pi));
  const long double ai = pref / root4 * (c * ce + sn * se);
  const long double aip = pref * root4 * (sn * cv - c * sv);
  return {(double)ai, (double)aip};
}

}  // namespace

AiryValue airy(double t) {
  if (!(t >= -12.0 && t <= 12.0)) {
    throw DomainError("airy: argument outside supported range [-12, 12]");
  }
  if (t > 5.5) return airy_asymptotic_pos(t);
  if (t < -7.0) return airy_asymptotic_neg(t);
  return airy_series(t);
}

}  // namespace rmt
