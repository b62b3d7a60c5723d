#pragma once

#include "rmt/symmetric_matrix.hpp"

namespace rmt {

// Independent route to the Tracy-Widom beta=2 CDF: Fredholm determinant of
// the Airy kernel on [x, infinity), Nystrom-discretized with Gauss-Legendre
// nodes mapped to [x, x+20] (the kernel decays superexponentially past the
// window). The internal Airy evaluation shares no code with laws::airy.
// Preconditions: -10 <= x <= 8, 20 <= order <= 200.
double airy_kernel_fredholm_tw2(double x, int order = 160);

// Same value with the self-convergence guard: |F(order) - F(order/2)| must
// be below 1e-8 or OracleError is raised (halting acceptance).
double airy_kernel_fredholm_tw2_checked(double x, int order = 160);

// Exact-quadrature event probability for the k-th smallest eigenvalue under
// the n-eigenvalue joint density P_{n,beta} (n <= 3): P(lambda_(k) in
// [a, b]), computed by nested Gauss-Legendre over the ordered sector of
// [-2, 2]^n, normalized by the same quadrature. Grid-refinement self-check
// to ~1e-4 absolute; failure raises OracleError.
double smalln_event_probability(int n, int beta, int k, double a, double b);

// Exact finite-n shell probability for Gaussian entries: sum xi^2 is
// (1/4) chi^2_d with d = n(n+1)/2 degrees of freedom, so the probability is
// a regularized incomplete gamma difference (absolute error ~1e-10).
double chi_shell_probability(int n, const ShellSpec& shell);

// Regularized lower incomplete gamma P(a, x) (series / continued fraction).
double gamma_p(double a, double x);

}  // namespace rmt
