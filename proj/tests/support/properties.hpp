#pragma once

// Randomised property checks. Each returns a verdict plus a one-line detail;
// the unit tests assert them individually and the acceptance runner
// aggregates them.

#include <cstdint>
#include <string>
#include <vector>

namespace geomax::props {

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// |<pi_old|psi_new>| <= |<pi_old|psi>| (1 - 1e-15) on `pairs` random
/// (state, theta) pairs with theta in [1e-6, 1].
Verdict overlap_decrease(int pairs, std::uint64_t seed);

/// For Haar 3-qubit states some theta in {1e-2, 1e-3, 1e-4} increases G;
/// passes when at most 1% of `states` fail.
Verdict ascent_monotonicity(int states, std::uint64_t seed);

/// check_norm_bound(q, x, 3) on a 100 x 100 grid, q in [0, 1], x in (0, 10].
Verdict norm_bound_grid();

/// Successive see-saw sweeps never lower the overlap by more than 1e-12.
Verdict seesaw_monotone(int chains, std::uint64_t seed);

/// lambda equals the top singular value within 1e-8 for random two-party states.
Verdict bipartite_svd(int states, std::uint64_t seed);

/// lambda^2 matches the two-sphere grid search within 1e-4.
Verdict two_qubit_grid(int states, std::uint64_t seed);

/// G is unchanged within 1e-8 by random local Jarlskog unitaries.
Verdict lu_invariance(int states, std::uint64_t seed);

/// Complementary marginals share their nonzero spectrum within 1e-10.
Verdict complementary_spectra(int states, std::uint64_t seed);

/// Shuffling edge order and orientation leaves every named graph state unchanged.
Verdict graph_edge_order(std::uint64_t seed);

/// ||U^dagger U - I||_max < 1e-12 for random parameters, d = 1..8.
Verdict jarlskog_unitarity(int samples, std::uint64_t seed);

/// Always-on suite with the sizes used for acceptance.
std::vector<Verdict> full_suite(std::uint64_t seed);

}  // namespace geomax::props
