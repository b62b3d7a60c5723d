#pragma once

#include <cmath>
#include <vector>

#include "rmt/errors.hpp"

namespace rmt {

// Symmetric tridiagonal matrix: diag has n entries, offdiag has n-1.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  int dim() const { return static_cast<int>(diag.size()); }

  void validate() const {
    if (diag.empty()) throw DomainError("TridiagonalMatrix: empty diagonal");
    if (offdiag.size() + 1 != diag.size()) {
      throw DomainError("TridiagonalMatrix: offdiag size must be n-1");
    }
    for (double x : diag) {
      if (!std::isfinite(x)) throw NumericError("TridiagonalMatrix: non-finite diagonal");
    }
    for (double x : offdiag) {
      if (!std::isfinite(x)) throw NumericError("TridiagonalMatrix: non-finite offdiagonal");
    }
  }

  double trace() const {
    double t = 0.0;
    for (double x : diag) t += x;
    return t;
  }

  double frobenius_sq() const {
    double s = 0.0;
    for (double x : diag) s += x * x;
    for (double x : offdiag) s += 2.0 * x * x;
    return s;
  }
};

}  // namespace rmt
