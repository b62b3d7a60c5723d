#pragma once

#include <vector>

namespace rmt {

// Hastings-McLeod solution of Painleve II, u'' = t u + 2 u^3, on a dense
// grid from t_max down to t_min. The boundary data at t_max is
// u = Ai(t_max), u' = Ai'(t_max): the unique solution asymptotic to Ai at
// +infinity, which is what makes the Tracy-Widom integral formula work.
struct PainleveSolution {
  std::vector<double> grid;     // descending, grid.front() == t_max
  std::vector<double> u;        // solution values
  std::vector<double> u_prime;  // derivative values
  double t_min = 0.0;
  double t_max = 0.0;
  double tol = 0.0;

  // Cubic Hermite interpolation; |x| must be inside [t_min, t_max].
  double value(double x) const;
  double derivative(double x) const;
};

// Integrates downward with an adaptive embedded Runge-Kutta pair in extended
// precision (the solution is a separatrix: errors injected near t = 0 grow
// like exp((2 sqrt(2)/3) |t|^{3/2}) going left, so the integrator works far
// below the requested tol). Local error per step <= tol; the stored grid is
// dense enough for ~1e-9 interpolation.
//
// Preconditions: t_min < -2 < 2 < t_max <= 10. Step-size underflow or a
// departure from the Hastings-McLeod branch raises NumericError.
PainleveSolution hastings_mcleod(double t_min, double t_max, double tol);

}  // namespace rmt
