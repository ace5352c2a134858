#include "geomax/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "parallel.hpp"

namespace geomax {

namespace {

constexpr double kProductThreshold = 1e-12;
// Smallest see-saw tolerance the schedule tightens to; below this the
// change in lambda is dominated by rounding.
constexpr double kTightestSeesawTol = 1e-14;

double product_overlap(const ProductState& a, const ProductState& b) {
  double v = 1.0;
  for (int p = 0; p < a.shape().parties(); ++p) {
    complex s = 0.0;
    const auto& x = a.local(p);
    const auto& y = b.local(p);
    for (std::size_t j = 0; j < x.size(); ++j) s += std::conj(x[j]) * y[j];
    v *= std::abs(s);
  }
  return v;
}

PureState normalized_sum(const PureState& state, const CVector& shift) {
  const auto amps = state.amplitudes();
  CVector out(amps.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = amps[i] + shift[i];
  return PureState(state.shape(), std::move(out)).normalized();
}

}  // namespace

AscentConfig AscentConfig::defaults_for(const SystemShape& shape) {
  AscentConfig cfg;
  cfg.seesaw = SeesawConfig::defaults_for(shape);
  return cfg;
}

void AscentConfig::validate() const {
  if (!(theta0 > 0.0)) throw Error("theta0 must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error("gamma must lie in [0, 1]");
  if (!(theta_min > 0.0 && theta_min < theta0)) throw Error("theta_min must lie in (0, theta0)");
  if (iters_max < 0) throw Error("iters_max must be >= 0");
  if (stagnation_window < 1) throw Error("stagnation_window must be >= 1");
  seesaw.validate();
}

Direction update_direction(const PureState& state, const ProductState& pi, DirectionMode mode) {
  const complex lam = overlap(pi, state);
  if (std::abs(lam) >= 1.0 - kProductThreshold) {
    throw ProductStateError("state is a product state (lambda = 1); no ascent direction");
  }
  const PureState pure_pi = product_as_pure(pi);
  const auto psi = state.amplitudes();
  const auto p = pure_pi.amplitudes();
  Direction dir;
  dir.vector.resize(psi.size());
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    dir.vector[i] = psi[i] - lam * p[i];
    s += std::norm(dir.vector[i]);
  }
  dir.m = std::sqrt(s);
  if (mode == DirectionMode::normalized) {
    for (auto& x : dir.vector) x /= dir.m;
  }
  return dir;
}

PureState ascend_step(const PureState& state, const ProductState& pi, double theta, DirectionMode mode) {
  if (!(theta > 0.0)) throw Error("step size must be > 0");
  Direction dir = update_direction(state, pi, mode);
  for (auto& x : dir.vector) x *= theta;
  return normalized_sum(state, dir.vector);
}

AscentTrace run_ascent(const PureState& initial, const AscentConfig& cfg) {
  cfg.validate();
  PureState state = initial.normalized();
  AscentTrace trace{{}, state, 0.0, AscentStatus::iters_exhausted, {}};

  double tol = cfg.seesaw.overlap_tol;
  auto seesaw_at = [&](int iter) {
    SeesawConfig s = cfg.seesaw;
    s.seed = detail::mix_seed(cfg.seesaw.seed, static_cast<std::uint64_t>(iter));
    s.overlap_tol = tol;
    return s;
  };
  auto bpa_of = [&](const PureState& psi, int iter, const ProductState* warm) {
    if (cfg.warm_start && warm != nullptr) {
      return best_product_approximation(psi, seesaw_at(iter), std::span<const ProductState>(warm, 1));
    }
    return best_product_approximation(psi, seesaw_at(iter));
  };

  BpaResult bpa = bpa_of(state, 0, nullptr);
  double theta = cfg.theta0;
  trace.records.push_back({0, bpa.g, bpa.lambda, theta, 1.0});
  if (bpa.lambda >= 1.0 - kProductThreshold) {
    trace.status = AscentStatus::product_state;
    trace.diagnostic = "initial state is a product state: G = 0 and the ascent is undefined";
    trace.best_g = bpa.g;
    return trace;
  }

  double best_g = bpa.g;
  PureState best_state = state;
  int last_improvement = 0;
  const bool uses_momentum = cfg.variant != Variant::plain;
  const double gamma = uses_momentum ? cfg.gamma : 0.0;
  CVector kappa(state.size(), complex{0.0});
  bool have_kappa = false;

  for (int iter = 1; iter <= cfg.iters_max; ++iter) {
    Direction dir;
    try {
      if (cfg.variant == Variant::nesterov && have_kappa) {
        CVector ahead(kappa.size());
        for (std::size_t i = 0; i < ahead.size(); ++i) ahead[i] = gamma * kappa[i];
        const PureState look = normalized_sum(state, ahead);
        const BpaResult look_bpa = bpa_of(look, -iter, &bpa.pi);
        dir = update_direction(look, look_bpa.pi, cfg.direction_mode);
      } else {
        dir = update_direction(state, bpa.pi, cfg.direction_mode);
      }
    } catch (const ProductStateError& e) {
      trace.status = AscentStatus::product_state;
      trace.diagnostic = e.what();
      break;
    }

    if (gamma > 0.0 && have_kappa) {
      complex c = 0.0;
      for (std::size_t i = 0; i < kappa.size(); ++i) c += std::conj(kappa[i]) * dir.vector[i];
      const double ac = std::abs(c);
      if (ac > 0.0) {
        const complex phase = std::conj(c) / ac;
        for (auto& x : dir.vector) x *= phase;
      }
    }
    for (std::size_t i = 0; i < kappa.size(); ++i) kappa[i] = gamma * kappa[i] + theta * dir.vector[i];
    have_kappa = true;

    state = normalized_sum(state, kappa);
    const ProductState prev_pi = bpa.pi;
    bpa = bpa_of(state, iter, &prev_pi);
    trace.records.push_back({iter, bpa.g, bpa.lambda, theta, product_overlap(prev_pi, bpa.pi)});

    if (bpa.g > best_g + cfg.improvement_tol) last_improvement = iter;
    if (bpa.g > best_g) {
      best_g = bpa.g;
      best_state = state;
    }
    if (iter - last_improvement >= cfg.stagnation_window) {
      theta *= 0.5;
      tol = std::max(tol * 0.1, kTightestSeesawTol);
      last_improvement = iter;
      std::fill(kappa.begin(), kappa.end(), complex{0.0});
      have_kappa = false;
      if (theta < cfg.theta_min) {
        trace.status = AscentStatus::converged;
        break;
      }
    }
  }

  // Re-evaluate the best and the last iterate with more restarts; a lucky
  // see-saw miss must not masquerade as a high G.
  SeesawConfig final_cfg = cfg.seesaw;
  final_cfg.restarts = std::max(cfg.final_restarts, 4 * cfg.seesaw.restarts);
  final_cfg.overlap_tol = kTightestSeesawTol;
  final_cfg.seed = detail::mix_seed(cfg.seesaw.seed, 0xf17a1ULL);
  final_cfg.polish_sweeps = std::max(final_cfg.polish_sweeps, 20000);
  const BpaResult best_check = best_product_approximation(best_state, final_cfg, std::span(&bpa.pi, 1));
  const BpaResult last_check = best_product_approximation(state, final_cfg, std::span(&bpa.pi, 1));
  if (last_check.g > best_check.g) {
    trace.final_state = state;
    trace.best_g = last_check.g;
  } else {
    trace.final_state = best_state;
    trace.best_g = best_check.g;
  }
  return trace;
}

std::vector<AscentTrace> run_campaign(const SystemShape& shape, const AscentConfig& cfg,
                                      const std::vector<std::uint64_t>& seeds, int jobs) {
  std::vector<std::uint64_t> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::optional<AscentTrace>> out(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
  auto one = [&](std::size_t i) {
    try {
      AscentConfig c = cfg;
      c.seesaw.seed = detail::mix_seed(cfg.seesaw.seed, sorted[i]);
      out[i] = run_ascent(random_pure_state(shape, sorted[i]), c);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  detail::parallel_for(sorted.size(), jobs, one);
  std::vector<AscentTrace> traces;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    traces.push_back(std::move(*out[i]));
  }
  return traces;
}

bool check_norm_bound(double q, double x, double c) {
  return 1.0 / std::sqrt(1.0 + 2.0 * q * x + x * x) < 1.0 - q * x + c * x * x;
}

void write_trace_csv(const AscentTrace& trace, std::ostream& os) {
  os << "iter,g,lambda,theta\n";
  char line[128];
  for (const auto& r : trace.records) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", r.iter, r.g, r.lambda, r.theta);
    os << line;
  }
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::momentum: return "momentum";
    case Variant::nesterov: return "nesterov";
  }
  return "?";
}

std::string to_string(DirectionMode m) {
  return m == DirectionMode::normalized ? "normalized" : "projected";
}

std::string to_string(AscentStatus s) {
  switch (s) {
    case AscentStatus::converged: return "converged";
    case AscentStatus::iters_exhausted: return "iters_exhausted";
    case AscentStatus::product_state: return "product_state";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "plain") return Variant::plain;
  if (s == "momentum") return Variant::momentum;
  if (s == "nesterov") return Variant::nesterov;
  return std::nullopt;
}

std::optional<DirectionMode> parse_direction_mode(const std::string& s) {
  if (s == "normalized") return DirectionMode::normalized;
  if (s == "projected") return DirectionMode::projected;
  return std::nullopt;
}

}  // namespace geomax
