#pragma once

#include <cstdint>
#include <string>

#include "rmt/entry_distribution.hpp"
#include "rmt/symmetric_matrix.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

// Generic Wigner sample: all n(n+1)/2 free raw entries i.i.d. from `dist`
// (the diagonal gets no special treatment here; GOE/GUE have their own
// samplers with the standard variances).
SymmetricMatrix sample_wigner(int n, const EntryDistribution& dist, std::uint64_t seed);

// GOE: off-diagonal a_ij ~ N(0, 1/(4n)), diagonal a_ii ~ N(0, 1/(2n));
// stored as raw entries with the 1/sqrt(n) scale factored out.
SymmetricMatrix sample_goe(int n, std::uint64_t seed);

// GUE via real embedding. Draws H = X + iY Hermitian with
// Re a_ij = Im a_ij ~ N(0, 1/(8n)) off the diagonal and a_ii ~ N(0, 1/(4n)),
// then returns the 2n-dimensional real symmetric matrix [[X, -Y], [Y, X]]
// whose spectrum is the spectrum of H with every eigenvalue doubled.
SymmetricMatrix sample_gue_embedded(int n, std::uint64_t seed);

// Tridiagonal beta-ensemble sampler (beta in {1, 2}); the eigenvalue law
// matches the dense GOE/GUE samplers at the same normalization but costs
// O(n) to draw and O(n^2) to solve. Diagonal ~ N(0, 1/(2 beta n)),
// off-diagonal k ~ chi_{beta (n-k)} / sqrt(4 beta n).
TridiagonalMatrix sample_beta_tridiagonal(int n, int beta, std::uint64_t seed);

enum class ShellMode { uniform_volume, gaussian_conditioned };

// Sample a raw-entry vector on the shell (as a SymmetricMatrix).
//   uniform_volume:       uniform direction on the unit sphere in d = n(n+1)/2
//                         coordinates, radius density proportional to r^(d-1)
//                         restricted to the shell.
//   gaussian_conditioned: i.i.d. N(0, 1/4) raw entries rejected until
//                         sum xi^2 lies in the shell (budget 1e6 attempts).
SymmetricMatrix sample_shell(int n, const ShellSpec& shell, ShellMode mode, std::uint64_t seed);

// One rejection attempt of the gaussian_conditioned sampler: fills `m` with
// i.i.d. N(0, 1/4) raw entries and reports whether it landed in the shell.
// Exposed so acceptance-rate statistics measure the same process the
// sampler runs.
bool shell_attempt(SymmetricMatrix& m, const ShellSpec& shell, std::mt19937_64& rng);

// Ensemble selector behind the CLI distribution spec string:
//   gaussian | goe | gue | rademacher | uniform | student_t:<dof> | tridiag:<beta>
struct EnsembleSpec {
  enum class Family { wigner, goe, gue, beta_tridiagonal };

  Family family = Family::wigner;
  EntryDistribution dist = EntryDistribution::gaussian();  // wigner only
  int beta = 1;                                            // beta_tridiagonal only

  static EnsembleSpec parse(const std::string& spec);
  std::string to_string() const;
  bool heavy_tail_warning() const {
    return family == Family::wigner && dist.heavy_tail_warning();
  }
};

}  // namespace rmt
