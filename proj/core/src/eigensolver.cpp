#include "rmt/eigensolver.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <vector>

namespace rmt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TridiagonalMatrix tridiagonalize(const SymmetricMatrix& m) {
  if (!m.all_finite()) throw NumericError("tridiagonalize: non-finite input");
  const int n = m.dim();

  // Dense working copy of the scaled entries; only the lower triangle is
  // referenced and updated.
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j);
  }

  std::vector<double> d(n, 0.0), e(n, 0.0), p(n, 0.0);

  for (int i = n - 1; i >= 1; --i) {
    double* const row_i = a.data() + static_cast<std::size_t>(i) * n;
    const int l = i - 1;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(row_i[k]);
      if (scale == 0.0) {
        e[i] = row_i[l];
        continue;
      }
      double h = 0.0;
      for (int k = 0; k <= l; ++k) {
        row_i[k] /= scale;
        h += row_i[k] * row_i[k];
      }
      double f = row_i[l];
      double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      row_i[l] = f - g;  // row i now holds the Householder vector u

      // p = A u, accumulated one row at a time; contributions above the
      // diagonal come from later rows' scatter into p[k].
      std::fill(p.begin(), p.begin() + l + 1, 0.0);
      for (int j = 0; j <= l; ++j) {
        const double* const row_j = a.data() + static_cast<std::size_t>(j) * n;
        const double uj = row_i[j];
        double s = 0.0;
        for (int k = 0; k < j; ++k) {
          s += row_j[k] * row_i[k];
          p[k] += row_j[k] * uj;
        }
        p[j] += s + row_j[j] * uj;
      }

      double tau = 0.0;
      for (int j = 0; j <= l; ++j) {
        p[j] /= h;
        tau += p[j] * row_i[j];
      }
      const double correction = tau / (2.0 * h);
      for (int j = 0; j <= l; ++j) p[j] -= correction * row_i[j];

      // rank-2 update A <- A - u q^T - q u^T on the lower triangle
      for (int j = 0; j <= l; ++j) {
        double* const row_j = a.data() + static_cast<std::size_t>(j) * n;
        const double uj = row_i[j];
        const double qj = p[j];
        for (int k = 0; k <= j; ++k) row_j[k] -= uj * p[k] + qj * row_i[k];
      }
    } else {
      e[i] = row_i[l];
    }
  }

  for (int i = 0; i < n; ++i) d[i] = a[static_cast<std::size_t>(i) * n + i];

  TridiagonalMatrix t;
  t.diag = std::move(d);
  t.offdiag.assign(e.begin() + 1, e.end());
  return t;
}

Spectrum eigenvalues(const TridiagonalMatrix& t) {
  t.validate();
  const int n = t.dim();
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());  // e[i] couples d[i], d[i+1]

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) {
          throw NumericError("eigenvalues: QL iteration did not converge within 50 sweeps");
        }
        // Wilkinson shift
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pshift;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  return Spectrum::from_unsorted(std::move(d));
}

Spectrum eigenvalues(const SymmetricMatrix& m) {
  const int n = m.dim();
  const double tr = m.trace();
  const double frob_sq = m.frobenius_sq();

  Spectrum s = eigenvalues(tridiagonalize(m));

  // Conservation invariants of the orthogonal reduction; failure signals a
  // solver bug, not a property of the input.
  const double frob = std::sqrt(frob_sq);
  const double tol = n * 1e-10;
  if (std::abs(s.sum() - tr) > tol * frob + 1e-300) {
    throw NumericError("eigenvalues: trace not conserved");
  }
  if (std::abs(s.sum_sq() - frob_sq) > tol * std::max(frob_sq, 1.0) + 1e-300) {
    throw NumericError("eigenvalues: Frobenius norm not conserved");
  }
  return s;
}

namespace {

// det(B - xI) by cofactor expansion for dim <= 4.
double charpoly_det(const std::array<double, 16>& b, int n, double x) {
  auto at = [&](int i, int j) -> double {
    double v = b[static_cast<std::size_t>(i) * 4 + j];
    return (i == j) ? v - x : v;
  };
  switch (n) {
    case 1:
      return at(0, 0);
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    case 4: {
      double det = 0.0;
      for (int c = 0; c < 4; ++c) {
        // 3x3 minor skipping row 0, column c
        double m3[3][3];
        for (int i = 1; i < 4; ++i) {
          int cc = 0;
          for (int j = 0; j < 4; ++j) {
            if (j == c) continue;
            m3[i - 1][cc++] = at(i, j);
          }
        }
        const double minor = m3[0][0] * (m3[1][1] * m3[2][2] - m3[1][2] * m3[2][1]) -
                             m3[0][1] * (m3[1][0] * m3[2][2] - m3[1][2] * m3[2][0]) +
                             m3[0][2] * (m3[1][0] * m3[2][1] - m3[1][1] * m3[2][0]);
        det += ((c % 2 == 0) ? 1.0 : -1.0) * at(0, c) * minor;
      }
      return det;
    }
    default:
      throw DomainError("charpoly_det: dimension > 4");
  }
}

// Real roots (with multiplicity) of a polynomial known to have only real
// roots. `eval` evaluates the polynomial (at the top level it is the
// cofactor-expansion determinant itself); `coef` (ascending) drives the
// derivative recursion. Critical points cut the line into monotone pieces:
// strict sign changes are bisected, even-multiplicity roots are picked up at
// critical points where p vanishes.
void real_roots_all_real(const std::function<double(double)>& eval, const std::vector<double>& coef,
                         double lo, double hi, std::vector<double>& out) {
  const int deg = static_cast<int>(coef.size()) - 1;

  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(-coef[0] / coef[1]);
    return;
  }
  if (deg == 2) {
    const double a = coef[2], b = coef[1], c = coef[0];
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) disc = 0.0;  // real-rooted by assumption; clip rounding
    const double sq = std::sqrt(disc);
    const double q = (b >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    double r1, r2;
    if (q != 0.0) {
      r1 = q / a;
      r2 = c / q;
    } else {
      r1 = r2 = -0.5 * b / a;
    }
    out.push_back(std::min(r1, r2));
    out.push_back(std::max(r1, r2));
    return;
  }

  std::vector<double> dcoef(deg);
  for (int k = 1; k <= deg; ++k) dcoef[k - 1] = k * coef[k];
  auto deval = [&](double x) {
    double v = 0.0;
    for (int k = deg - 1; k >= 0; --k) v = v * x + dcoef[k];
    return v;
  };
  std::vector<double> crit;
  real_roots_all_real(deval, dcoef, lo, hi, crit);
  std::sort(crit.begin(), crit.end());

  const double bmax = std::max(std::abs(lo), std::abs(hi));
  double pscale = 0.0, bpow = 1.0;
  for (int k = 0; k <= deg; ++k) {
    pscale += std::abs(coef[k]) * bpow;
    bpow *= bmax;
  }
  const double root_tol = 1e-9 * std::max(pscale, 1e-300);

  // cluster critical points and classify each cluster as root-of-p or cut
  struct Cut {
    double x;
    bool is_root;
  };
  std::vector<Cut> cuts;
  cuts.push_back({lo, false});
  const double cluster_tol = 1e-9 * std::max(1.0, bmax);
  for (std::size_t i = 0; i < crit.size();) {
    std::size_t j = i;
    while (j + 1 < crit.size() && std::abs(crit[j + 1] - crit[i]) < cluster_tol) ++j;
    const std::size_t repeats = j - i + 1;
    const double c = crit[i + (j - i) / 2];
    if (c > lo && c < hi) {
      const bool is_root = std::abs(eval(c)) <= root_tol;
      if (is_root) {
        // multiplicity in p = multiplicity in p' plus one
        for (std::size_t r = 0; r < repeats + 1; ++r) out.push_back(c);
      }
      cuts.push_back({c, is_root});
    }
    i = j + 1;
  }
  cuts.push_back({hi, false});

  // simple roots: strict sign changes on pieces not adjacent to a root cut
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i].is_root || cuts[i + 1].is_root) continue;
    double a = cuts[i].x, b = cuts[i + 1].x;
    double fa = eval(a);
    const double fb = eval(b);
    if (std::abs(fa) <= root_tol || std::abs(fb) <= root_tol) continue;
    if ((fa < 0.0) == (fb < 0.0)) continue;
    for (int it = 0; it < 200 && a < b; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = eval(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
}

}  // namespace

Spectrum charpoly_oracle(const SymmetricMatrix& m) {
  const int n = m.dim();
  if (n > 4) throw DomainError("charpoly_oracle: supports n <= 4 only");

  std::array<double, 16> b{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i) * 4 + j] = m(i, j);
  }

  if (n == 1) return Spectrum::from_unsorted({b[0]});
  if (n == 2) {
    const double a00 = b[0], a11 = b[5], a01 = b[1];
    const double mean = 0.5 * (a00 + a11);
    const double r = std::hypot(0.5 * (a00 - a11), a01);
    return Spectrum::from_unsorted({mean - r, mean + r});
  }

  // Gershgorin bound on the spectrum
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(b[static_cast<std::size_t>(i) * 4 + j]);
    bound = std::max(bound, row);
  }
  bound += 1.0;

  // Interpolate exact charpoly coefficients from n+1 cofactor evaluations
  // (degree n polynomial), then isolate roots on monotone pieces.
  const int npts = n + 1;
  std::vector<double> xs(npts), ys(npts);
  for (int k = 0; k < npts; ++k) {
    xs[k] = -bound + 2.0 * bound * k / (npts - 1);
    ys[k] = charpoly_det(b, n, xs[k]);
  }
  // Newton divided differences -> monomial coefficients
  std::vector<double> dd = ys;
  for (int level = 1; level < npts; ++level) {
    for (int k = npts - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
    }
  }
  std::vector<double> coef(npts, 0.0);
  coef[0] = dd[npts - 1];
  for (int k = npts - 2; k >= 0; --k) {
    for (int j = npts - 1; j >= 1; --j) coef[j] = coef[j - 1] - xs[k] * coef[j];
    coef[0] = -xs[k] * coef[0] + dd[k];
  }

  auto det_eval = [&](double x) { return charpoly_det(b, n, x); };
  std::vector<double> roots;
  real_roots_all_real(det_eval, coef, -bound, bound, roots);

  if (static_cast<int>(roots.size()) != n) {
    throw NumericError("charpoly_oracle: located " + std::to_string(roots.size()) +
                       " roots for dimension " + std::to_string(n));
  }
  return Spectrum::from_unsorted(std::move(roots));
}

}  // namespace rmt
