#include "geomax/closest_product.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace geomax {

namespace {

constexpr double kDegenerateNorm = 1e-14;
constexpr int kDegenerateRetries = 16;

struct Chain {
  std::vector<CVector> locals;
  double lambda = 0.0;
};

// One sweep in place; returns the overlap after the last site update, which
// equals |<iterate|state>|.
double sweep_in_place(const PureState& state, std::vector<CVector>& locals, CVector& work,
                      CVector& scratch) {
  const auto& dims = state.shape().dims();
  double lambda = 0.0;
  for (int site = 0; site < state.shape().parties(); ++site) {
    detail::contract_except(state.amplitudes(), dims, locals, site, work, scratch);
    double s = 0.0;
    for (const auto& x : work) s += std::norm(x);
    s = std::sqrt(s);
    if (!(s > kDegenerateNorm)) {
      throw DegenerateIterate("see-saw contraction vanished at party " + std::to_string(site));
    }
    auto& u = locals[static_cast<std::size_t>(site)];
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = work[j] / s;
    lambda = s;
  }
  return lambda;
}

double run_chain(const PureState& state, Chain& chain, int sweeps, double tol) {
  CVector work, scratch;
  double prev = -1.0;
  for (int t = 0; t < sweeps; ++t) {
    chain.lambda = sweep_in_place(state, chain.locals, work, scratch);
    if (std::abs(chain.lambda - prev) < tol) break;
    prev = chain.lambda;
  }
  return chain.lambda;
}

Chain random_chain(const PureState& state, const SeesawConfig& cfg, int index) {
  for (int retry = 0; retry < kDegenerateRetries; ++retry) {
    const std::uint64_t seed =
        cfg.seed + static_cast<std::uint64_t>(index) +
        static_cast<std::uint64_t>(retry) * static_cast<std::uint64_t>(cfg.restarts);
    Chain chain{random_product_state(state.shape(), retry == 0 ? seed : detail::mix_seed(seed, retry)).locals()};
    try {
      run_chain(state, chain, cfg.sweeps_max, cfg.overlap_tol);
      return chain;
    } catch (const DegenerateIterate&) {
    }
  }
  // Every start was orthogonal to the state's contractions; report zero overlap.
  return Chain{random_product_state(state.shape(), cfg.seed + static_cast<std::uint64_t>(index)).locals(), 0.0};
}

}  // namespace

SeesawConfig SeesawConfig::defaults_for(const SystemShape& shape) {
  SeesawConfig cfg;
  const double D = static_cast<double>(shape.total_dim());
  const double t = std::clamp((std::log(D) - std::log(16.0)) / (std::log(1024.0) - std::log(16.0)), 0.0, 1.0);
  cfg.restarts = static_cast<int>(std::lround(10.0 * std::pow(10.0, t)));
  cfg.sweeps_max = static_cast<int>(std::lround(10.0 + 20.0 * t));
  return cfg;
}

void SeesawConfig::validate() const {
  if (restarts < 1) throw Error("see-saw restarts must be >= 1");
  if (sweeps_max < 1) throw Error("see-saw sweeps_max must be >= 1");
  if (!(overlap_tol > 0.0)) throw Error("see-saw overlap_tol must be > 0");
  if (polish_sweeps < 0) throw Error("see-saw polish_sweeps must be >= 0");
  if (jobs < 1) throw Error("see-saw jobs must be >= 1");
}

ProductState seesaw_sweep(const PureState& state, const ProductState& iterate) {
  if (!(state.shape() == iterate.shape())) throw ShapeError("see-saw on mismatched shapes");
  auto locals = iterate.locals();
  CVector work, scratch;
  sweep_in_place(state, locals, work, scratch);
  return ProductState(state.shape(), std::move(locals));
}

BpaResult best_product_approximation(const PureState& state, const SeesawConfig& cfg,
                                     std::span<const ProductState> extra_starts) {
  cfg.validate();
  const std::size_t n_extra = extra_starts.size();
  const std::size_t n_chains = n_extra + static_cast<std::size_t>(cfg.restarts);
  std::vector<Chain> chains(n_chains);

  auto run = [&](std::size_t i) {
    if (i < n_extra) {
      if (!(extra_starts[i].shape() == state.shape())) throw ShapeError("start product has wrong shape");
      chains[i].locals = extra_starts[i].locals();
      try {
        run_chain(state, chains[i], cfg.sweeps_max, cfg.overlap_tol);
      } catch (const DegenerateIterate&) {
        chains[i].lambda = 0.0;
      }
    } else {
      chains[i] = random_chain(state, cfg, static_cast<int>(i - n_extra));
    }
  };

  detail::parallel_for(n_chains, cfg.jobs, run);

  std::size_t best = 0;
  std::vector<double> lambdas;
  lambdas.reserve(n_chains);
  for (std::size_t i = 0; i < n_chains; ++i) {
    lambdas.push_back(chains[i].lambda);
    if (chains[i].lambda > chains[best].lambda) best = i;
  }

  Chain& winner = chains[best];
  if (winner.lambda > 0.0) {
    try {
      run_chain(state, winner, cfg.polish_sweeps, cfg.overlap_tol);
    } catch (const DegenerateIterate&) {
    }
  }

  ProductState pi(state.shape(), std::move(winner.locals));
  const complex ov = overlap(pi, state);
  const double lambda = std::abs(ov);
  if (lambda > 0.0) {
    pi = pi.with_local(0, [&] {
      CVector u = pi.local(0);
      const complex phase = ov / lambda;
      for (auto& x : u) x *= phase;
      return u;
    }());
  }
  const double lam = std::min(lambda, 1.0);
  return BpaResult{std::move(pi), lam, 1.0 - lam * lam, std::move(lambdas)};
}

double geometric_measure(const PureState& state, const SeesawConfig& cfg) {
  return best_product_approximation(state, cfg).g;
}

double geometric_measure(const PureState& state) {
  return geometric_measure(state, SeesawConfig::defaults_for(state.shape()));
}

}  // namespace geomax
