#pragma once

// Derivative-free minimisation by coordinate-wise golden-section line
// searches, optionally mixed with random directions, with a shrinking probe
// step. Used for the local-unitary searches.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace geomax {

struct LocalSearchOptions {
  std::size_t max_evaluations = 100000;
  double initial_step = 0.5;
  double min_step = 1e-9;
  /// Random unit directions tried after every coordinate sweep.
  int random_directions = 0;
  std::uint64_t seed = 0;
  /// Stop as soon as the objective drops to this value.
  std::optional<double> stop_at;
};

struct LocalSearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  /// False when the evaluation budget ran out before the probe step fell
  /// below min_step (or stop_at was reached).
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

LocalSearchResult minimize_coordinatewise(const Objective& f, std::vector<double> x0,
                                          const LocalSearchOptions& options);

}  // namespace geomax
