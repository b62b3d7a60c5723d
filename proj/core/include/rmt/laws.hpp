#pragma once

#include <utility>
#include <vector>

namespace rmt {

// --- Semicircle law (Eq. (1) normalization: support [-1, 1]) ---------------

// G(t) = 1/2 + (t sqrt(1-t^2) + asin t) / pi on [-1, 1]; clamps outside.
double semicircle_cdf(double t);

// density (2/pi) sqrt(1 - t^2) on [-1, 1], 0 outside
double semicircle_pdf(double t);

// G^{-1}(p) for p in (0, 1), solved to |G(result) - p| <= 1e-12.
// Odd-symmetric by construction: quantile(1-p) == -quantile(p) exactly.
double semicircle_quantile(double p);

// Classical location of the k-th eigenvalue: G^{-1}(k/n), 1 <= k <= n-1.
double classical_location(int k, int n);

// First-order expected number of eigenvalues in [a, b]: n (G(b) - G(a)).
double expected_count(double a, double b, int n);

// Edge measure density (2 sqrt(2) / pi) sqrt(x) for x >= 0, else 0.
double edge_measure_density(double x);

// --- Gustavsson normalizations, converted to paper units -------------------

// Bulk fluctuation scale of the k-th eigenvalue:
// sigma = sqrt( ln n / (8 n^2 (1 - t^2)) ) with t = G^{-1}(k/n).
// Gustavsson's sigma divided by sqrt(2n), his spectrum edge being sqrt(2n).
// Requires n >= 3 and |t| <= 0.99; closer to the edge raises DomainError
// pointing at the edge ops.
double bulk_sigma(int k, int n);

// Center and scale of eigenvalue number n-k near the upper edge, in paper
// units: center = 1 - (3 pi k / (4 sqrt(2) n))^{2/3},
// scale = sqrt( (1/(12 pi))^{2/3} ln k / (n^{1/3} k^{2/3}) ) / sqrt(2n).
// Requires 2 <= k < n.
std::pair<double, double> edge_center_scale(int k, int n);

// --- Airy function ----------------------------------------------------------

struct AiryValue {
  double ai;
  double ai_prime;
};

// Ai and Ai' on [-12, 12]: Maclaurin series in the center, asymptotic
// expansions in the wings; absolute error below 1e-11 on the whole range.
AiryValue airy(double t);

// --- Sine kernels and joint densities (bulk, paper section 1.1) ------------

// Normalized convention: K2(y,z) = sin(pi (y-z)) / (pi (y-z)) with K2(y,y)=1;
// beta = 1 adds sin(pi (y+z)) / (pi (y+z)).
double sine_kernel(double y, double z, int beta);

// det(K(y_i, y_j)) for k = |points| <= 6; for beta = 2 this is the limiting
// rescaled k-point correlation R_{2,k}.
double r_k_det(const std::vector<double>& points, int beta);

// Unnormalized log joint eigenvalue density:
// beta sum_{i<j} ln|l_i - l_j| - beta n sum l_i^2. Coincident eigenvalues
// give -infinity.
double joint_logdensity(const std::vector<double>& lambdas, int beta, int n);

}  // namespace rmt
