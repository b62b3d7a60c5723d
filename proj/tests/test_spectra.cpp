#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rmt/eigensolver.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/rng.hpp"
#include "test_support.hpp"

using namespace rmt;

namespace {

SymmetricMatrix matrix_from_raw(int n, const std::vector<double>& raw_upper) {
  SymmetricMatrix m(n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.raw(i, j) = raw_upper[idx++];
  }
  return m;
}

}  // namespace

TEST_CASE("tridiagonalize leaves tridiagonal input unchanged up to offdiag signs") {
  // scaled tridiagonal: put raw entries so that a_ij = raw/sqrt(4)
  SymmetricMatrix m(4);
  m.raw(0, 0) = 1.0;
  m.raw(1, 1) = -2.0;
  m.raw(2, 2) = 0.5;
  m.raw(3, 3) = 3.0;
  m.raw(0, 1) = 0.7;
  m.raw(1, 2) = -0.3;
  m.raw(2, 3) = 1.1;

  const TridiagonalMatrix t = tridiagonalize(m);
  for (int i = 0; i < 4; ++i) CHECK(t.diag[i] == doctest::Approx(m(i, i)).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(t.offdiag[i]) == doctest::Approx(std::abs(m(i, i + 1))).epsilon(1e-14));
  }
}

TEST_CASE("tridiagonalize preserves trace and Frobenius norm") {
  const auto m = sample_goe(6, 123);
  const TridiagonalMatrix t = tridiagonalize(m);
  CHECK(t.trace() == doctest::Approx(m.trace()).epsilon(1e-12));
  CHECK(t.frobenius_sq() == doctest::Approx(m.frobenius_sq()).epsilon(1e-12));
}

TEST_CASE("tridiagonalize rejects non-finite input") {
  SymmetricMatrix m(3);
  m.raw(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(tridiagonalize(m), NumericError);
}

TEST_CASE("constant-diagonal matrices have the constant as eigenvalue") {
  const int n = 5;
  SymmetricMatrix m(n);
  const double c = 1.7;
  for (int i = 0; i < n; ++i) m.raw(i, i) = c * std::sqrt(static_cast<double>(n));
  const Spectrum s = eigenvalues(m);
  for (double v : s.values) CHECK(v == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("2x2 antidiagonal matrix has eigenvalues -b, +b") {
  SymmetricMatrix m(2);
  const double b_raw = 0.9;  // a_01 = 0.9 / sqrt(2)
  m.raw(0, 1) = b_raw;
  const double b = b_raw / std::sqrt(2.0);
  const Spectrum s = eigenvalues(m);
  CHECK(s.values[0] == doctest::Approx(-b).epsilon(1e-14));
  CHECK(s.values[1] == doctest::Approx(+b).epsilon(1e-14));
}

TEST_CASE("QL eigenvalues agree with the charpoly oracle on random matrices") {
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto m = sample_goe(n, derive_seed(1000 + n, 0, rep));
      const Spectrum a = eigenvalues(m);
      const Spectrum b = charpoly_oracle(m);
      for (int i = 0; i < n; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-8);
    }
  }
}

TEST_CASE("charpoly oracle closed forms") {
  SymmetricMatrix one(1);
  one.raw(0, 0) = -0.4;
  CHECK(charpoly_oracle(one).values[0] == doctest::Approx(-0.4).epsilon(1e-14));

  SymmetricMatrix diag2(2);
  diag2.raw(0, 0) = std::sqrt(2.0) * 1.0;  // a_00 = 1
  diag2.raw(1, 1) = std::sqrt(2.0) * 2.0;  // a_11 = 2
  const Spectrum s2 = charpoly_oracle(diag2);
  CHECK(s2.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s2.values[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rank-one 3x3 matrix: oracle finds the double zero") {
  const double c = 0.8;
  SymmetricMatrix m(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) m.raw(i, j) = c;
  }
  const Spectrum s = charpoly_oracle(m);
  CHECK(s.values[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.values[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.values[2] == doctest::Approx(3.0 * c / std::sqrt(3.0)).epsilon(1e-10));

  const Spectrum ql = eigenvalues(m);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ql.values[i] - s.values[i]) < 1e-10);
}

TEST_CASE("charpoly oracle handles repeated pairs in dimension 4") {
  SymmetricMatrix m(4);
  m.raw(0, 0) = 2.0;
  m.raw(1, 1) = 2.0;
  m.raw(2, 2) = 4.0;
  m.raw(3, 3) = 4.0;
  const Spectrum s = charpoly_oracle(m);
  CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.values[2] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s.values[3] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("charpoly oracle rejects n > 4") {
  CHECK_THROWS_AS(charpoly_oracle(sample_goe(5, 1)), DomainError);
}

TEST_CASE("spectra are sorted and conserve trace and Frobenius norm") {
  for (int rep = 0; rep < 5; ++rep) {
    const auto m = sample_wigner(40, EntryDistribution::uniform(), derive_seed(4, 0, rep));
    const Spectrum s = eigenvalues(m);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    const double frob = std::sqrt(m.frobenius_sq());
    CHECK(std::abs(s.sum() - m.trace()) < 40 * 1e-10 * frob);
    CHECK(std::abs(s.sum_sq() - m.frobenius_sq()) < 40 * 1e-10 * std::max(1.0, m.frobenius_sq()));
  }
}

TEST_CASE("eigenvalues are invariant under symmetric permutation") {
  const int n = 12;
  const auto m = sample_goe(n, 777);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(5);
  std::shuffle(perm.begin(), perm.end(), rng);

  SymmetricMatrix pm(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) pm.raw(i, j) = m.raw(perm[i], perm[j]);
  }
  const Spectrum a = eigenvalues(m);
  const Spectrum b = eigenvalues(pm);
  for (int i = 0; i < n; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
}

TEST_CASE("tridiagonal eigenvalue path handles n=1 and n=2") {
  TridiagonalMatrix t1{{3.5}, {}};
  CHECK(eigenvalues(t1).values[0] == 3.5);

  TridiagonalMatrix t2{{0.0, 0.0}, {2.0}};
  const Spectrum s = eigenvalues(t2);
  CHECK(s.values[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(s.values[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dedupe_embedded rejects spectra that do not pair") {
  Spectrum s;
  s.n = 4;
  s.values = {0.0, 0.5, 1.0, 1.5};
  CHECK_THROWS_AS(dedupe_embedded(s), NumericError);
}
