#pragma once

// Entanglement ascent: repeatedly push a state away from its best product
// approximation,
//
//     |psi> -> (|psi> + theta |eta>) / N,   |eta> = (1 - |pi><pi|)|psi> / M,
//
// which lowers the overlap with the old BPA by the factor 1/N. Plain,
// momentum and Nesterov variants share a step-halving schedule.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geomax/closest_product.hpp"
#include "geomax/state.hpp"

namespace geomax {

enum class Variant { plain, momentum, nesterov };
enum class DirectionMode {
  normalized,  ///< unit |eta>: constant shift length theta
  projected,   ///< raw (1 - |pi><pi|)|psi>: shift shrinks with M
};

struct AscentConfig {
  double theta0 = 0.01;
  Variant variant = Variant::momentum;
  double gamma = 0.9;
  DirectionMode direction_mode = DirectionMode::normalized;
  int iters_max = 20000;
  /// Iterations without a G improvement above improvement_tol before theta is halved.
  int stagnation_window = 400;
  double improvement_tol = 1e-10;
  double theta_min = 1e-7;
  SeesawConfig seesaw;
  /// Keep the previous BPA as an additional see-saw start each iteration.
  bool warm_start = true;
  /// Restarts used to re-evaluate the best state once the run ends.
  int final_restarts = 0;

  static AscentConfig defaults_for(const SystemShape& shape);
  void validate() const;
};

struct AscentRecord {
  int iter = 0;
  double g = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  /// |<pi_prev|pi_t>|; 1 on the first record.
  double overlap_with_prev_pi = 1.0;
};

enum class AscentStatus {
  converged,   ///< theta fell below theta_min
  iters_exhausted,
  product_state,  ///< G = 0 at the start, no ascent direction
};

struct AscentTrace {
  std::vector<AscentRecord> records;
  /// Best-G state seen during the run.
  PureState final_state;
  /// G of final_state, re-evaluated with the final see-saw settings.
  double best_g = 0.0;
  AscentStatus status = AscentStatus::iters_exhausted;
  std::string diagnostic;
};

struct Direction {
  /// (1 - |pi><pi|)|psi>, unit-normalised in DirectionMode::normalized.
  CVector vector;
  /// Norm of the projected vector, sqrt(1 - lambda^2) for unit |psi>.
  double m = 0.0;
};

/// Throws ProductStateError if |<pi|psi>| >= 1 - 1e-12.
Direction update_direction(const PureState& state, const ProductState& pi, DirectionMode mode);

/// (|psi> + theta |direction>) normalised.
PureState ascend_step(const PureState& state, const ProductState& pi, double theta, DirectionMode mode);

/// Runs the ascent from `initial`; the per-iteration BPA uses cfg.seesaw with
/// the seed mixed with the iteration number.
AscentTrace run_ascent(const PureState& initial, const AscentConfig& cfg);

/// Independent runs from random_pure_state(shape, seed) for every seed, in
/// seed order; up to `jobs` run concurrently.
std::vector<AscentTrace> run_campaign(const SystemShape& shape, const AscentConfig& cfg,
                                      const std::vector<std::uint64_t>& seeds, int jobs);

/// 1/sqrt(1 + 2qx + x^2) < 1 - qx + c x^2.
bool check_norm_bound(double q, double x, double c);

/// CSV with header iter,g,lambda,theta.
void write_trace_csv(const AscentTrace& trace, std::ostream& os);

std::string to_string(Variant v);
std::string to_string(DirectionMode m);
std::string to_string(AscentStatus s);
std::optional<Variant> parse_variant(const std::string& s);
std::optional<DirectionMode> parse_direction_mode(const std::string& s);

}  // namespace geomax
