#pragma once

#include "rmt/painleve.hpp"

namespace rmt {

// Lazily built shared Hastings-McLeod solution on (-10, 8) at tol 1e-10;
// immutable after construction, safe to share across threads.
const PainleveSolution& default_hastings_mcleod();

// Tracy-Widom beta=2 distribution function:
//   F2(x) = exp( - int_x^inf (t - x) u(t)^2 dt )
// evaluated by adaptive quadrature over [x, t_max] plus the closed-form
// Airy tail beyond t_max (where u = Ai to ~1e-9). Absolute error < 1e-8 on
// the supported range x in [-10, 8].
double tw2_cdf(double x);
double tw2_cdf(double x, const PainleveSolution& u);

}  // namespace rmt
