#pragma once

// Best product-state approximation (BPA) and the geometric measure
// G = 1 - lambda^2, lambda = max_pi |<pi|psi>|, via randomized see-saw.

#include <cstdint>
#include <span>
#include <vector>

#include "geomax/state.hpp"

namespace geomax {

struct SeesawConfig {
  int restarts = 10;
  int sweeps_max = 10;
  /// Chains stop once |lambda_{t+1} - lambda_t| falls below this.
  double overlap_tol = 1e-12;
  std::uint64_t seed = 0;
  /// Extra sweeps spent converging the winning chain to overlap_tol.
  int polish_sweeps = 5000;
  /// Threads used for independent restart chains.
  int jobs = 1;

  /// Restart and sweep counts scaled with the total dimension: 10 restarts
  /// and 10 sweeps up to dimension 16, growing log-linearly to 100 restarts
  /// and 30 sweeps at dimension 1024 and beyond.
  static SeesawConfig defaults_for(const SystemShape& shape);

  void validate() const;
};

struct BpaResult {
  ProductState pi;
  /// <pi|psi>, made real and non-negative by fixing the phase of pi.
  double lambda = 0.0;
  double g = 1.0;
  /// Final lambda of every chain, extra starts first, then random restarts.
  std::vector<double> restart_lambdas;
};

/// One pass over the parties in order, replacing each local vector by the
/// normalised contraction of the state with all the others. Throws
/// DegenerateIterate if a contraction vanishes.
ProductState seesaw_sweep(const PureState& state, const ProductState& iterate);

/// Runs `extra_starts.size()` chains from the given products plus
/// cfg.restarts chains from Haar-random products (chain i seeded with
/// cfg.seed + i) and returns the best, polished and phase-fixed. Ties keep the
/// first chain found.
BpaResult best_product_approximation(const PureState& state, const SeesawConfig& cfg,
                                     std::span<const ProductState> extra_starts = {});

double geometric_measure(const PureState& state, const SeesawConfig& cfg);
double geometric_measure(const PureState& state);

}  // namespace geomax
