#pragma once

#include "rmt/spectrum.hpp"
#include "rmt/symmetric_matrix.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

// Householder reduction to tridiagonal form (orthogonal similarity, values
// only). Trace and Frobenius norm are preserved to machine-level accuracy.
TridiagonalMatrix tridiagonalize(const SymmetricMatrix& m);

// All eigenvalues of a symmetric tridiagonal matrix, sorted ascending.
// Implicit-shift QL with Wilkinson shifts; deflation when
// |e_i| <= eps * (|d_i| + |d_{i+1}|). More than 50 iterations for one
// eigenvalue raises NumericError.
Spectrum eigenvalues(const TridiagonalMatrix& t);

// Dense path: tridiagonalize, then QL. Verifies the trace and Frobenius
// conservation invariants of the result against the source matrix
// (tolerance n * 1e-10 on the natural scale) and throws NumericError on
// violation.
Spectrum eigenvalues(const SymmetricMatrix& m);

// Independent small-n oracle: eigenvalues located by sign-change bisection
// on det(A - xI) evaluated by cofactor expansion, refined to ~1e-12.
// Closed forms for n = 1, 2. Supports n <= 4 only.
Spectrum charpoly_oracle(const SymmetricMatrix& m);

}  // namespace rmt
