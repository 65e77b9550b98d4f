#pragma once

#include "fracvel/fanalytic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracvel {

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  /// Measured quantities behind the verdict.
  std::string detail;
  double seconds;
};

/// Runs every acceptance check in order.
std::vector<CriterionResult> run_acceptance();

/// Runs a single check by id (1-based). Throws ParamError for an unknown id.
CriterionResult run_criterion(int id);

int acceptance_count();

/// Pair of F-analytic functions with finite velocities of order beta at x.
struct SeriesPair {
  FractionalPowerSeries f;
  FractionalPowerSeries g;
  double x;
  double beta;
};

/// Seeded random corpus: the leading term of f vanishes at x with exponent
/// beta, g has a nonzero constant, and exponent gaps are at least 0.3.
std::vector<SeriesPair> algebra_corpus(std::uint64_t seed, int count);

} // namespace fracvel
