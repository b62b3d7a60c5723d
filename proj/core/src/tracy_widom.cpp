#include "rmt/tracy_widom.hpp"

#include <cmath>
#include <functional>

#include "rmt/errors.hpp"
#include "rmt/laws.hpp"

namespace rmt {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48);
}

// int_T^inf Ai^2 dt and int_T^inf t Ai^2 dt in closed form (antiderivatives
// of the Airy square follow from Ai'' = t Ai).
struct AiryTail {
  double i1;  // int Ai^2
  double i2;  // int t Ai^2
};

AiryTail airy_tail(double T) {
  const AiryValue a = airy(T);
  const double ai = a.ai, aip = a.ai_prime;
  AiryTail tail;
  tail.i1 = aip * aip - T * ai * ai;
  tail.i2 = (T * aip * aip - T * T * ai * ai - ai * aip) / 3.0;
  return tail;
}

}  // namespace

const PainleveSolution& default_hastings_mcleod() {
  static const PainleveSolution sol = hastings_mcleod(-10.0, 8.0, 1e-10);
  return sol;
}

double tw2_cdf(double x) { return tw2_cdf(x, default_hastings_mcleod()); }

double tw2_cdf(double x, const PainleveSolution& u) {
  if (!(x >= u.t_min && x <= u.t_max)) {
    throw DomainError("tw2_cdf: x outside the Painleve grid range");
  }
  auto integrand = [&](double t) {
    const double ut = u.value(t);
    return (t - x) * ut * ut;
  };
  const double body = integrate(integrand, x, u.t_max, 1e-10);
  const AiryTail tail = airy_tail(u.t_max);
  const double total = body + (tail.i2 - x * tail.i1);
  const double f = std::exp(-total);
  if (f < 0.0) return 0.0;
  return f > 1.0 ? 1.0 : f;
}

}  // namespace rmt
