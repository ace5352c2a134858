#pragma once

// Marginal-spectrum diagnostics: k-uniformity, AME and MMS.
//
// MMS ("maximally marginal symmetric") is read here as: let k* be the first
// level k = 1..floor(n/2) whose marginals are not all maximally mixed (k* =
// floor(n/2) when every level is flat). The state is MMS when all k*-party
// marginal spectra coincide. AME states are MMS with k* = floor(n/2).

#include <map>
#include <optional>
#include <vector>

#include "geomax/state.hpp"

namespace geomax {

inline constexpr double kFlatnessTol = 1e-8;
inline constexpr double kSpectrumTol = 1e-6;

/// Every k-subset of parties (ascending, lexicographic) mapped to the
/// descending eigenvalues of its reduced density matrix. 1 <= k <= n-1.
std::map<std::vector<int>, std::vector<double>> marginal_spectra(const PureState& state, int k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> party_subsets(int n, int k);

/// Every k-party marginal is within tol (max entrywise) of the maximally mixed state.
bool is_k_uniform(const PureState& state, int k, double tol = kFlatnessTol);

/// floor(n/2)-uniform.
bool is_ame(const PureState& state, double tol = kFlatnessTol);

struct MmsReport {
  bool is_mms = false;
  int k_star = 0;
};

MmsReport mms_report(const PureState& state, double flat_tol = kFlatnessTol,
                     double spectrum_tol = kSpectrumTol);
bool is_mms(const PureState& state, double flat_tol = kFlatnessTol, double spectrum_tol = kSpectrumTol);

/// Largest entrywise deviation of any k-party marginal from I/d_subset.
double max_flatness_deviation(const PureState& state, int k);

/// Largest entrywise difference between any two sorted k-party spectra.
double max_spectrum_spread(const PureState& state, int k);

}  // namespace geomax
