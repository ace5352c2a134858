#pragma once

// Local-unitary post-processing: a recursive (Jarlskog) parametrization of
// U(d), fidelity against a guessed state up to local unitaries, and
// sparsification of states for which no guess is available.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geomax/state.hpp"
#include "geomax/subspace.hpp"

namespace geomax {

/// Two states are regarded as equal when their fidelity reaches 1 - this.
inline constexpr double kEqualityEpsilon = 1e-6;

/// U = diag(e^{i alpha}) * A_{d,2} * ... * A_{d,d} * diag(e^{i beta}), where
/// A_{d,k} embeds the k x k rotation by theta_k in the plane spanned by
/// (a_k, 0) and e_k.
struct JarlskogParams {
  int d = 1;
  std::vector<double> alpha;
  std::vector<double> beta;
  /// theta[k - 2] for k = 2..d.
  std::vector<double> theta;
  /// a[k - 2] is a unit vector of length k - 1.
  std::vector<CVector> a;

  static JarlskogParams identity(int d);
  /// Angles uniform in [0, 2 pi), a_k Haar-random on the unit sphere.
  static JarlskogParams random(int d, std::uint64_t seed);

  /// Length of the real encoding: alpha, beta, then theta_k, Re a_k, Im a_k
  /// for each k. Equals d^2 + 2d - 1.
  static std::size_t parameter_count(int d);
  std::vector<double> to_vector() const;
  /// Inverse of to_vector; each a_k is renormalised (a zero vector becomes
  /// e_1).
  static JarlskogParams from_vector(int d, std::span<const double> x);

  /// Throws Error on inconsistent sizes or |<a_k|a_k> - 1| > 1e-12.
  void validate() const;
};

CMatrix jarlskog_unitary(const JarlskogParams& p);

/// Haar-distributed d x d unitary (QR of a complex Ginibre matrix).
CMatrix haar_unitary(int d, std::uint64_t seed);

struct SearchBudget {
  /// Objective evaluations shared by the derivative-free refinement.
  std::size_t evaluations = 200000;
  int restarts = 8;
  std::uint64_t seed = 0;
  int jobs = 1;

  void validate() const;
};

struct FidelityResult {
  /// sup |<state| U_1 x ... x U_n |guess>| found by the search.
  double fidelity = 0.0;
  /// U_i acting on the guess.
  std::vector<CMatrix> unitaries;
  bool equal = false;
  /// False when the evaluation budget ran out.
  bool converged = false;
};

/// Restarts (identity first, then Haar-random frames) are each driven to a
/// local optimum by alternating per-party polar updates; the best one is then
/// refined by coordinate-wise golden-section search over Jarlskog parameters.
FidelityResult lu_fidelity(const PureState& state, const PureState& guess, const SearchBudget& budget = {});

/// Sum of the moduli of all amplitudes.
double l1_norm(const PureState& state);

struct SparsifyResult {
  /// (U_1 x ... x U_n) applied to the input.
  PureState state;
  std::vector<CMatrix> unitaries;
  double l1 = 0.0;
  bool converged = false;
};

/// Minimises l1_norm over local unitaries. Restarts: the identity frame, the
/// eigenframes of the one-party marginals, then Haar-random frames.
SparsifyResult sparsify(const PureState& state, const SearchBudget& budget = {});

/// One "|digits> re im" line per amplitude with modulus >= zero_threshold,
/// amplitudes in fixed 10-digit notation. Digits are comma separated when
/// some party has dimension above 10.
std::string pretty_print(const PureState& state, double zero_threshold = 1e-9);

struct SubspaceMatch {
  /// (1/k) ||B_target^dagger (U_1 x ... x U_n) B_found||_F^2, in [0, 1].
  double fidelity = 0.0;
  std::vector<CMatrix> unitaries;
  /// Principal angles between the target span and the rotated found span.
  std::vector<double> angles;
  bool equal = false;
  bool converged = false;
};

/// Local-unitary alignment of two equal-rank subspaces, equality declared
/// at fidelity >= 1 - kEqualityEpsilon.
SubspaceMatch subspace_lu_match(const SubspaceProjector& target, const SubspaceProjector& found,
                                const SearchBudget& budget = {});

}  // namespace geomax
