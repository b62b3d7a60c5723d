#include "rmt/entry_distribution.hpp"

#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

EntryDistribution EntryDistribution::student_t(double tail_exponent) {
  if (!(tail_exponent > 2.0)) {
    throw ConfigError("student_t entry law needs tail_exponent > 2 for finite variance, got " +
                      std::to_string(tail_exponent));
  }
  return {EntryKind::student_t, tail_exponent};
}

double EntryDistribution::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case EntryKind::gaussian: {
      std::normal_distribution<double> normal(0.0, 0.5);
      return normal(rng);
    }
    case EntryKind::rademacher: {
      return (rng() & 1u) ? 0.5 : -0.5;
    }
    case EntryKind::uniform: {
      const double half = std::sqrt(3.0) / 2.0;
      std::uniform_real_distribution<double> unif(-half, half);
      return unif(rng);
    }
    case EntryKind::student_t: {
      std::student_t_distribution<double> t(tail_exponent_);
      const double s = 0.5 * std::sqrt((tail_exponent_ - 2.0) / tail_exponent_);
      return s * t(rng);
    }
  }
  throw ConfigError("unknown entry distribution kind");
}

void EntryDistribution::fill(std::span<double> out, std::mt19937_64& rng) const {
  switch (kind_) {
    case EntryKind::gaussian: {
      std::normal_distribution<double> normal(0.0, 0.5);
      for (double& x : out) x = normal(rng);
      return;
    }
    case EntryKind::rademacher: {
      for (double& x : out) x = (rng() & 1u) ? 0.5 : -0.5;
      return;
    }
    case EntryKind::uniform: {
      const double half = std::sqrt(3.0) / 2.0;
      std::uniform_real_distribution<double> unif(-half, half);
      for (double& x : out) x = unif(rng);
      return;
    }
    case EntryKind::student_t: {
      std::student_t_distribution<double> t(tail_exponent_);
      const double s = 0.5 * std::sqrt((tail_exponent_ - 2.0) / tail_exponent_);
      for (double& x : out) x = s * t(rng);
      return;
    }
  }
  throw ConfigError("unknown entry distribution kind");
}

std::string EntryDistribution::to_string() const {
  switch (kind_) {
    case EntryKind::gaussian:
      return "gaussian";
    case EntryKind::rademacher:
      return "rademacher";
    case EntryKind::uniform:
      return "uniform";
    case EntryKind::student_t:
      return "student_t:" + std::to_string(tail_exponent_);
  }
  return "?";
}

}  // namespace rmt
