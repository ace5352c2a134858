#include "geomax/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace geomax {

std::vector<std::vector<int>> party_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

void check_level(const PureState& state, int k) {
  const int n = state.shape().parties();
  if (k < 1 || k > n - 1) throw ShapeError("marginal level k must lie in [1, n-1]");
}

}  // namespace

std::map<std::vector<int>, std::vector<double>> marginal_spectra(const PureState& state, int k) {
  check_level(state, k);
  std::map<std::vector<int>, std::vector<double>> out;
  for (const auto& subset : party_subsets(state.shape().parties(), k)) {
    out.emplace(subset, reduced_density_matrix(state, subset).eigenvalues());
  }
  return out;
}

double max_flatness_deviation(const PureState& state, int k) {
  check_level(state, k);
  double worst = 0.0;
  for (const auto& subset : party_subsets(state.shape().parties(), k)) {
    const DensityMatrix rho = reduced_density_matrix(state, subset);
    const double inv = 1.0 / static_cast<double>(rho.dim());
    const CMatrix diff = rho.entries - inv * CMatrix::Identity(rho.dim(), rho.dim());
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

double max_spectrum_spread(const PureState& state, int k) {
  const auto spectra = marginal_spectra(state, k);
  double worst = 0.0;
  const auto& first = spectra.begin()->second;
  // Subsets of equal size can still have different dimensions for mixed
  // local dims; compare padded spectra.
  for (const auto& [subset, ev] : spectra) {
    const std::size_t len = std::max(first.size(), ev.size());
    for (std::size_t i = 0; i < len; ++i) {
      const double a = i < first.size() ? first[i] : 0.0;
      const double b = i < ev.size() ? ev[i] : 0.0;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

bool is_k_uniform(const PureState& state, int k, double tol) {
  return max_flatness_deviation(state, k) <= tol;
}

bool is_ame(const PureState& state, double tol) {
  const int half = state.shape().parties() / 2;
  if (half < 1) return false;
  return is_k_uniform(state, half, tol);
}

MmsReport mms_report(const PureState& state, double flat_tol, double spectrum_tol) {
  const int half = state.shape().parties() / 2;
  if (half < 1) return {};
  int k_star = half;
  for (int k = 1; k <= half; ++k) {
    if (!is_k_uniform(state, k, flat_tol)) {
      k_star = k;
      break;
    }
  }
  return {max_spectrum_spread(state, k_star) <= spectrum_tol, k_star};
}

bool is_mms(const PureState& state, double flat_tol, double spectrum_tol) {
  return mms_report(state, flat_tol, spectrum_tol).is_mms;
}

}  // namespace geomax
