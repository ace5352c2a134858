#pragma once

// Maximally entangled subspaces: the ascent lifted from states to rank-k
// projectors P. The figure of merit is the subspace measure
// 1 - sup_pi <pi|P|pi>, the geometric measure of the least entangled state
// in im(P).

#include <cstdint>
#include <span>
#include <vector>

#include "geomax/ascent.hpp"
#include "geomax/closest_product.hpp"
#include "geomax/state.hpp"

namespace geomax {

class SubspaceProjector {
 public:
  /// Throws Error unless the basis is orthonormal within 1e-10 and 1 <= k < D.
  SubspaceProjector(SystemShape shape, std::vector<PureState> basis);

  /// Orthonormalises `vectors` (modified Gram-Schmidt) first.
  static SubspaceProjector from_spanning(SystemShape shape, const std::vector<PureState>& vectors);

  const SystemShape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<PureState>& basis() const { return basis_; }

  /// D x k matrix whose columns are the basis vectors.
  CMatrix basis_matrix() const;
  /// D x D projector.
  CMatrix matrix() const;
  /// <pi|P|pi>.
  double expectation(const ProductState& pi) const;

 private:
  SystemShape shape_;
  std::vector<PureState> basis_;
};

/// k Haar vectors, Gram-Schmidt orthonormalised.
SubspaceProjector random_subspace(const SystemShape& shape, int k, std::uint64_t seed);

struct ProjectorOverlap {
  ProductState pi;
  /// sup <pi|P|pi> found by the search.
  double value = 0.0;
  double measure() const { return 1.0 - value; }
};

/// See-saw on <pi|P|pi>: each party's vector becomes the top eigenvector of
/// sum_i c_i c_i^dagger, c_i the contraction of basis vector i with the
/// other parties. Ties inside a degenerate top eigenspace go to the
/// projection of the first computational basis vector with nonzero weight.
ProjectorOverlap best_product_overlap_with_projector(const SubspaceProjector& p, const SeesawConfig& cfg,
                                                     std::span<const ProductState> extra_starts = {});

/// Span of the top-k eigenvectors of P - theta |pi><pi|. Throws DegenerateCut
/// when eigenvalues k and k+1 coincide within 1e-12.
SubspaceProjector subspace_ascend_step(const SubspaceProjector& p, const ProductState& pi, double theta);

struct SubspaceRecord {
  int iter = 0;
  double measure = 0.0;
  double theta = 0.0;
};

struct SubspaceTrace {
  std::vector<SubspaceRecord> records;
  SubspaceProjector best;
  double best_measure = 0.0;
  AscentStatus status = AscentStatus::iters_exhausted;
};

/// Ascent from random_subspace(shape, k, seed) with the step-halving schedule
/// of run_ascent (variant and direction mode do not apply).
SubspaceTrace run_subspace_ascent(const SystemShape& shape, int k, const AscentConfig& cfg, std::uint64_t seed);

/// Principal angles (radians, ascending) between two spans of equal rank.
std::vector<double> principal_angles(const SubspaceProjector& a, const SubspaceProjector& b);

}  // namespace geomax
