#include "rmt/ensembles.hpp"

#include <cmath>
#include <random>

#include "rmt/errors.hpp"
#include "rmt/rng.hpp"

namespace rmt {

SymmetricMatrix sample_wigner(int n, const EntryDistribution& dist, std::uint64_t seed) {
  SymmetricMatrix m(n);
  auto rng = make_engine(seed);
  dist.fill(m.raw_data(), rng);
  return m;
}

SymmetricMatrix sample_goe(int n, std::uint64_t seed) {
  SymmetricMatrix m(n);
  auto rng = make_engine(seed);
  std::normal_distribution<double> offdiag(0.0, 0.5);              // raw var 1/4
  std::normal_distribution<double> diag(0.0, std::sqrt(0.5));      // raw var 1/2
  for (int i = 0; i < n; ++i) {
    m.raw(i, i) = diag(rng);
    for (int j = i + 1; j < n; ++j) m.raw(i, j) = offdiag(rng);
  }
  return m;
}

SymmetricMatrix sample_gue_embedded(int n, std::uint64_t seed) {
  // In the raw coordinates of the 2n-dimensional embedding (scale
  // 1/sqrt(2n)), the paper's GUE variances become: X off-diagonal and Y
  // entries ~ N(0, 1/4), X diagonal ~ N(0, 1/2).
  SymmetricMatrix m(2 * n);
  auto rng = make_engine(seed);
  std::normal_distribution<double> quarter(0.0, 0.5);
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));

  for (int i = 0; i < n; ++i) {
    const double xii = half(rng);
    m.raw(i, i) = xii;
    m.raw(n + i, n + i) = xii;
    for (int j = i + 1; j < n; ++j) {
      const double xij = quarter(rng);  // Re part
      const double yij = quarter(rng);  // Im part, Y antisymmetric
      m.raw(i, j) = xij;
      m.raw(n + i, n + j) = xij;
      m.raw(i, n + j) = -yij;  // (-Y)_{ij}
      m.raw(j, n + i) = yij;   // (-Y)_{ji} = +Y_{ij}
    }
    m.raw(i, n + i) = 0.0;  // Y diagonal vanishes
  }
  return m;
}

TridiagonalMatrix sample_beta_tridiagonal(int n, int beta, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_beta_tridiagonal: n must be >= 1");
  if (beta != 1 && beta != 2) {
    throw ConfigError("sample_beta_tridiagonal: beta must be 1 or 2, got " + std::to_string(beta));
  }
  auto rng = make_engine(seed);
  TridiagonalMatrix t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);

  const double diag_sd = 1.0 / std::sqrt(2.0 * beta * n);
  std::normal_distribution<double> diag(0.0, diag_sd);
  for (int i = 0; i < n; ++i) t.diag[i] = diag(rng);

  const double off_scale = 1.0 / std::sqrt(4.0 * beta * n);
  for (int k = 1; k <= n - 1; ++k) {
    std::chi_squared_distribution<double> chisq(static_cast<double>(beta) * (n - k));
    t.offdiag[k - 1] = off_scale * std::sqrt(chisq(rng));
  }
  return t;
}

bool shell_attempt(SymmetricMatrix& m, const ShellSpec& shell, std::mt19937_64& rng) {
  std::normal_distribution<double> quarter(0.0, 0.5);
  double sum_sq = 0.0;
  for (double& x : m.raw_data()) {
    x = quarter(rng);
    sum_sq += x * x;
  }
  return shell.contains(m.dim(), sum_sq);
}

SymmetricMatrix sample_shell(int n, const ShellSpec& shell, ShellMode mode, std::uint64_t seed) {
  shell.validate();
  if (n < 1) throw DomainError("sample_shell: n must be >= 1");
  auto rng = make_engine(seed);
  SymmetricMatrix m(n);
  const std::size_t d = m.raw_data().size();

  if (mode == ShellMode::gaussian_conditioned) {
    constexpr long kBudget = 1000000;
    for (long attempt = 1; attempt <= kBudget; ++attempt) {
      if (shell_attempt(m, shell, rng)) return m;
    }
    throw SamplingError("sample_shell: rejection budget of 1e6 attempts exhausted "
                        "(acceptance rate below ~1e-6); widen the shell");
  }

  // uniform_volume: isotropic direction, radial density r^(d-1) on the shell.
  std::normal_distribution<double> normal(0.0, 1.0);
  double norm_sq = 0.0;
  for (double& x : m.raw_data()) {
    x = normal(rng);
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);

  // Inverse-CDF draw of the radius in log space: with l = ln r_lo - ln r_hi,
  //   ln r = ln r_hi + (1/d) ln(u + (1-u) e^{d l}),
  // stable for the huge exponents d produces.
  const double r_lo = std::sqrt(shell.lo(n));
  const double r_hi = std::sqrt(shell.hi(n));
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const double u = 1.0 - unif01(rng);  // (0, 1]: keeps the log finite
  double log_r;
  if (r_lo == 0.0) {
    log_r = std::log(r_hi) + std::log(u) / static_cast<double>(d);
  } else {
    const double dl = static_cast<double>(d) * (std::log(r_lo) - std::log(r_hi));
    log_r = std::log(r_hi) + std::log1p(-(1.0 - u) * (1.0 - std::exp(dl))) / static_cast<double>(d);
  }
  const double r = std::exp(log_r);

  for (double& x : m.raw_data()) x *= r / norm;

  // postcondition guard against rounding at the boundary
  double sum_sq = m.sum_sq_raw();
  if (!shell.contains(n, sum_sq)) {
    const double target = std::min(std::max(sum_sq, shell.lo(n)), shell.hi(n));
    const double fix = std::sqrt(target / sum_sq);
    for (double& x : m.raw_data()) x *= fix;
  }
  return m;
}

EnsembleSpec EnsembleSpec::parse(const std::string& spec) {
  EnsembleSpec e;
  if (spec == "gaussian") {
    e.family = Family::wigner;
    e.dist = EntryDistribution::gaussian();
  } else if (spec == "rademacher") {
    e.family = Family::wigner;
    e.dist = EntryDistribution::rademacher();
  } else if (spec == "uniform") {
    e.family = Family::wigner;
    e.dist = EntryDistribution::uniform();
  } else if (spec == "goe") {
    e.family = Family::goe;
  } else if (spec == "gue") {
    e.family = Family::gue;
  } else if (spec.rfind("student_t:", 0) == 0) {
    const std::string arg = spec.substr(10);
    double dof = 0.0;
    try {
      std::size_t pos = 0;
      dof = std::stod(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ConfigError("bad student_t degrees of freedom in distribution spec '" + spec + "'");
    }
    e.family = Family::wigner;
    e.dist = EntryDistribution::student_t(dof);
  } else if (spec.rfind("tridiag:", 0) == 0) {
    const std::string arg = spec.substr(8);
    if (arg == "1") {
      e.beta = 1;
    } else if (arg == "2") {
      e.beta = 2;
    } else {
      throw ConfigError("tridiag beta must be 1 or 2 in distribution spec '" + spec + "'");
    }
    e.family = Family::beta_tridiagonal;
  } else {
    throw ConfigError("unknown distribution spec '" + spec +
                      "' (expected gaussian | goe | gue | rademacher | uniform | "
                      "student_t:<dof> | tridiag:<beta>)");
  }
  return e;
}

std::string EnsembleSpec::to_string() const {
  switch (family) {
    case Family::wigner:
      return dist.to_string();
    case Family::goe:
      return "goe";
    case Family::gue:
      return "gue";
    case Family::beta_tridiagonal:
      return "tridiag:" + std::to_string(beta);
  }
  return "?";
}

}  // namespace rmt
