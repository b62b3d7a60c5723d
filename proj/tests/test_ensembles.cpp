#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "rmt/eigensolver.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/ks.hpp"
#include "rmt/oracles.hpp"
#include "rmt/rng.hpp"
#include "rmt/spectrum.hpp"
#include "test_support.hpp"

using namespace rmt;

TEST_CASE("rademacher entries take only the values +-1/2") {
  const auto m = sample_wigner(2, EntryDistribution::rademacher(), 42);
  for (double x : m.raw_data()) CHECK((x == 0.5 || x == -0.5));
}

TEST_CASE("identical (n, dist, seed) reproduces bit-identical matrices") {
  for (const char* spec : {"gaussian", "rademacher", "uniform", "student_t:20"}) {
    const EnsembleSpec e = EnsembleSpec::parse(spec);
    const auto a = sample_wigner(13, e.dist, 987654321);
    const auto b = sample_wigner(13, e.dist, 987654321);
    CHECK(a.raw_data() == b.raw_data());
  }
  const auto t1 = sample_beta_tridiagonal(50, 2, 11);
  const auto t2 = sample_beta_tridiagonal(50, 2, 11);
  CHECK(t1.diag == t2.diag);
  CHECK(t1.offdiag == t2.offdiag);
}

TEST_CASE("sum of squared raw entries matches n(n+1)/8 in expectation") {
  // n=50: E sum = 50*51/8 = 318.75, Var = d/8 with d = 1275
  const int reps = 10000;
  std::vector<double> sums(reps);
  test::parallel_for(reps, [&](int r) {
    sums[r] = sample_wigner(50, EntryDistribution::gaussian(), derive_seed(5, 0, r)).sum_sq_raw();
  });
  const double expect = 318.75;
  const double sd_of_mean = std::sqrt(1275.0 / 8.0 / reps);
  CHECK(std::abs(test::mean(sums) - expect) < 3.0 * sd_of_mean);
}

TEST_CASE("GOE entry variances follow the stated normalization") {
  const int n = 10, reps = 100000;
  std::vector<double> off(reps), diag(reps);
  test::parallel_for(reps, [&](int r) {
    const auto m = sample_goe(n, derive_seed(77, 0, r));
    off[r] = m(0, 1);
    diag[r] = m(0, 0);
  });
  // variance-of-variance for a Gaussian sample: 2 sigma^4 / (m-1)
  const double v_off = test::variance(off);
  const double se_off = std::sqrt(2.0 / (reps - 1.0)) * 0.025;
  CHECK(std::abs(v_off - 0.025) < 3.0 * se_off);

  const double v_diag = test::variance(diag);
  const double se_diag = std::sqrt(2.0 / (reps - 1.0)) * 0.05;
  CHECK(std::abs(v_diag - 0.05) < 3.0 * se_diag);
}

TEST_CASE("symmetric storage makes a_ij == a_ji exactly") {
  const auto m = sample_wigner(17, EntryDistribution::uniform(), 3);
  for (int i = 0; i < 17; ++i) {
    for (int j = 0; j < 17; ++j) CHECK(m(i, j) == m(j, i));
  }
}

TEST_CASE("GUE embedding doubles every eigenvalue") {
  const auto m = sample_gue_embedded(3, 2024);
  CHECK(m.dim() == 6);
  const Spectrum s = eigenvalues(m);
  for (int i = 0; i < 6; i += 2) {
    CHECK(std::abs(s.values[i + 1] - s.values[i]) < 1e-10);
  }
  CHECK_NOTHROW(dedupe_embedded(s));
}

TEST_CASE("GUE real-part entry variance is 1/(8n)") {
  const int n = 10, reps = 100000;
  std::vector<double> re(reps);
  test::parallel_for(reps, [&](int r) { re[r] = sample_gue_embedded(n, derive_seed(8, 0, r))(0, 1); });
  const double target = 1.0 / 80.0;
  const double se = std::sqrt(2.0 / (reps - 1.0)) * target;
  CHECK(std::abs(test::variance(re) - target) < 3.0 * se);
}

TEST_CASE("deduped GUE spectra follow the semicircle law") {
  const int n = 200, reps = 100;
  std::vector<std::vector<double>> vals(reps);
  test::parallel_for(reps, [&](int r) {
    vals[r] = dedupe_embedded(eigenvalues(sample_gue_embedded(n, derive_seed(21, 0, r)))).values;
  });
  std::vector<double> pooled;
  for (auto& v : vals) pooled.insert(pooled.end(), v.begin(), v.end());
  const KsResult ks = ks_one_sample(pooled, ReferenceCdf::semicircle());
  CHECK(ks.d < 0.05);
}

TEST_CASE("tridiagonal beta=1 sampler matches dense GOE in law") {
  const int n = 300, reps = 200;
  std::vector<std::vector<double>> tri(reps), dense(reps);
  test::parallel_for(reps, [&](int r) {
    tri[r] = eigenvalues(sample_beta_tridiagonal(n, 1, derive_seed(31, 0, r))).values;
    dense[r] = eigenvalues(sample_goe(n, derive_seed(31, 1, r))).values;
  });
  std::vector<double> a, b;
  for (auto& v : tri) a.insert(a.end(), v.begin(), v.end());
  for (auto& v : dense) b.insert(b.end(), v.begin(), v.end());
  const KsResult ks = ks_two_sample(a, b);
  // pooled eigenvalues are not independent draws, so treat the KS distance
  // at face value rather than through the p-value: same-law samples of this
  // size stay well under 0.01 (rigidity shrinks ECDF noise)
  CHECK(ks.d < 0.01);
  CHECK(ks_two_sample(a, a).d == 0.0);
}

TEST_CASE("tridiagonal n=1 variance matches the dense 1x1 case") {
  const int reps = 100000;
  std::vector<double> tri(reps), dense(reps);
  test::parallel_for(reps, [&](int r) {
    tri[r] = sample_beta_tridiagonal(1, 1, derive_seed(99, 0, r)).diag[0];
    dense[r] = sample_goe(1, derive_seed(99, 1, r))(0, 0);
  });
  // both are N(0, 1/2) at n=1: compare within 3 combined SEs
  const double vt = test::variance(tri), vd = test::variance(dense);
  const double se = std::sqrt(2.0 / (reps - 1.0)) * 0.5 * std::sqrt(2.0);
  CHECK(std::abs(vt - vd) < 3.0 * se);
  CHECK(std::abs(vt - 0.5) < 3.0 * se);
}

TEST_CASE("unsupported tridiagonal beta is a configuration error") {
  CHECK_THROWS_AS(sample_beta_tridiagonal(10, 4, 1), ConfigError);
}

TEST_CASE("student_t tail exponent at or below 2 is rejected, below 18 warns") {
  CHECK_THROWS_AS(EntryDistribution::student_t(2.0), ConfigError);
  CHECK_THROWS_AS(EnsembleSpec::parse("student_t:1.5"), ConfigError);
  CHECK(EntryDistribution::student_t(5.0).heavy_tail_warning());
  CHECK_FALSE(EntryDistribution::student_t(20.0).heavy_tail_warning());
}

TEST_CASE("entry laws have mean 0 and variance 1/4") {
  const int draws = 1000000;
  for (const char* spec : {"gaussian", "rademacher", "uniform", "student_t:20"}) {
    const EntryDistribution dist = EnsembleSpec::parse(spec).dist;
    auto rng = make_engine(1234);
    std::vector<double> xs(draws);
    dist.fill(xs, rng);
    CHECK(std::abs(test::mean(xs)) < 3.0 * 0.5 / 1000.0);
    // SE of the variance estimate: sigma^2 sqrt(kappa - 1) / sqrt(m); the
    // heaviest law here is student_t:20 with kurtosis 3.375
    const double se_var = 0.25 * std::sqrt(2.5) / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(test::variance(xs) - 0.25) < 3.0 * se_var);
  }
}

TEST_CASE("distribution spec strings round-trip and reject junk") {
  for (const char* spec : {"gaussian", "goe", "gue", "rademacher", "uniform", "tridiag:2"}) {
    CHECK(EnsembleSpec::parse(spec).to_string() == spec);
  }
  CHECK(EnsembleSpec::parse("student_t:20").dist.tail_exponent() == 20.0);
  CHECK_THROWS_AS(EnsembleSpec::parse("cauchy"), ConfigError);
  CHECK_THROWS_AS(EnsembleSpec::parse("tridiag:3"), ConfigError);
  CHECK_THROWS_AS(EnsembleSpec::parse("student_t:"), ConfigError);
}

TEST_CASE("shell samples satisfy the bounds exactly") {
  const ShellSpec shell{0.3, 0.3};
  for (int r = 0; r < 20; ++r) {
    const auto mg = sample_shell(20, shell, ShellMode::gaussian_conditioned, derive_seed(1, 0, r));
    CHECK(shell.contains(20, mg.sum_sq_raw()));
    const auto mu = sample_shell(20, shell, ShellMode::uniform_volume, derive_seed(1, 1, r));
    CHECK(shell.contains(20, mu.sum_sq_raw()));
  }
}

TEST_CASE("gaussian_conditioned acceptance rate matches the chi-square oracle") {
  const int n = 20;
  const ShellSpec shell{0.3, 0.3};
  const double p_ref = chi_shell_probability(n, shell);
  const int attempts = 100000;
  std::vector<double> hits(attempts);
  test::parallel_for(attempts, [&](int r) {
    auto rng = make_engine(derive_seed(17, 0, r));
    SymmetricMatrix m(n);
    hits[r] = shell_attempt(m, shell, rng) ? 1.0 : 0.0;
  });
  const double p_hat = test::mean(hits);
  const double se = std::sqrt(p_ref * (1.0 - p_ref) / attempts);
  CHECK(std::abs(p_hat - p_ref) < 3.0 * se);
}

TEST_CASE("too narrow a shell exhausts the rejection budget") {
  const ShellSpec needle{1e-7, 1e-7};
  CHECK_THROWS_AS(sample_shell(40, needle, ShellMode::gaussian_conditioned, 5), SamplingError);
}

TEST_CASE("uniform_volume radius spans the shell rather than one sphere") {
  // with d = n(n+1)/2 = 210 the radial density r^(d-1) still leaves
  // ~exp(-d * width/center) spread; just check determinism + in-shell here
  const ShellSpec shell{2.0, 2.0};
  const auto a = sample_shell(20, shell, ShellMode::uniform_volume, 333);
  const auto b = sample_shell(20, shell, ShellMode::uniform_volume, 333);
  CHECK(a.raw_data() == b.raw_data());
}

TEST_CASE("seed derivation is stable across versions") {
  // frozen: the mixing function is part of the report contract
  CHECK(derive_seed(0, 0, 0) == splitmix64(splitmix64(0 ^ splitmix64(0))));
  CHECK(derive_seed(42, 1, 7) != derive_seed(42, 0, 7));
  CHECK(derive_seed(42, 1, 7) != derive_seed(42, 1, 8));
  CHECK(derive_seed(42, 1, 7) == derive_seed(42, 1, 7));
}
