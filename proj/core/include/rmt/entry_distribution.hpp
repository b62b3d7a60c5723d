#pragma once

#include <random>
#include <span>
#include <string>

namespace rmt {

enum class EntryKind { gaussian, rademacher, uniform, student_t };

// A symmetric law for the raw matrix entries xi_ij, normalized so that
// E xi = 0 and Var xi = 1/4 exactly:
//
//   gaussian    N(0, 1/4)
//   rademacher  +-1/2 with equal probability
//   uniform     U[-sqrt(3)/2, +sqrt(3)/2]
//   student_t   t_nu rescaled by sqrt((nu-2)/nu)/2, nu = tail_exponent > 2
//
// A tail exponent below 18 is legal but flagged: the polynomial-tail edge
// results assume P(|xi| >= x) <= x^-p with p >= 18.
class EntryDistribution {
 public:
  static EntryDistribution gaussian() { return {EntryKind::gaussian, 0.0}; }
  static EntryDistribution rademacher() { return {EntryKind::rademacher, 0.0}; }
  static EntryDistribution uniform() { return {EntryKind::uniform, 0.0}; }
  static EntryDistribution student_t(double tail_exponent);

  EntryKind kind() const { return kind_; }
  double tail_exponent() const { return tail_exponent_; }
  bool heavy_tail_warning() const {
    return kind_ == EntryKind::student_t && tail_exponent_ < 18.0;
  }

  // One raw draw. Deterministic given the engine state.
  double sample(std::mt19937_64& rng) const;

  // Bulk fill; equivalent to repeated sample() but cheaper in hot loops.
  void fill(std::span<double> out, std::mt19937_64& rng) const;

  std::string to_string() const;

 private:
  EntryDistribution(EntryKind kind, double tail_exponent)
      : kind_(kind), tail_exponent_(tail_exponent) {}

  EntryKind kind_;
  double tail_exponent_;
};

}  // namespace rmt
