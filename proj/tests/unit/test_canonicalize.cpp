#include <gtest/gtest.h>

#include <cmath>

#include "geomax/canonicalize.hpp"
#include "geomax/closest_product.hpp"
#include "geomax/subspace.hpp"
#include "geomax/zoo.hpp"

using namespace geomax;

namespace {

std::vector<CMatrix> random_frames(const SystemShape& shape, std::uint64_t seed) {
  std::vector<CMatrix> us;
  for (int p = 0; p < shape.parties(); ++p) us.push_back(haar_unitary(shape.dim(p), seed + static_cast<std::uint64_t>(p)));
  return us;
}

SearchBudget small_budget() {
  SearchBudget b;
  b.evaluations = 20000;
  b.restarts = 4;
  return b;
}

int nonzero_count(const PureState& s, double tol) {
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) n += std::abs(s[i]) > tol;
  return n;
}

}  // namespace

TEST(Jarlskog, IdentityParameters) {
  for (int d = 1; d <= 6; ++d) {
    const CMatrix u = jarlskog_unitary(JarlskogParams::identity(d));
    EXPECT_LT((u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-15) << d;
  }
}

TEST(Jarlskog, QubitCaseHasTheSu2FormUpToPhase) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix u = jarlskog_unitary(JarlskogParams::random(2, seed));
    const CMatrix v = u / std::sqrt(u.determinant());
    EXPECT_NEAR(std::abs(v(1, 1) - std::conj(v(0, 0))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(0, 1) + std::conj(v(1, 0))), 0.0, 1e-12);
    EXPECT_NEAR(std::norm(v(0, 0)) + std::norm(v(1, 0)), 1.0, 1e-12);
  }
}

TEST(Jarlskog, RandomParametersGiveUnitaries) {
  for (int d = 1; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const CMatrix u = jarlskog_unitary(JarlskogParams::random(d, seed));
      EXPECT_LT((u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Jarlskog, VectorEncodingRoundTrips) {
  for (int d = 1; d <= 5; ++d) {
    const auto p = JarlskogParams::random(d, 3);
    const auto x = p.to_vector();
    EXPECT_EQ(x.size(), JarlskogParams::parameter_count(d));
    EXPECT_EQ(x.size(), static_cast<std::size_t>(d * d + 2 * d - 1));
    const CMatrix u = jarlskog_unitary(p);
    const CMatrix v = jarlskog_unitary(JarlskogParams::from_vector(d, x));
    EXPECT_LT((u - v).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Jarlskog, FromVectorRenormalises) {
  std::vector<double> x(JarlskogParams::parameter_count(3), 0.0);
  const auto p = JarlskogParams::from_vector(3, x);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.a[0][0], complex(1.0));
}

TEST(Jarlskog, ValidationRejectsNonUnitDirections) {
  auto p = JarlskogParams::identity(3);
  p.a[1] = {2.0, 0.0};
  EXPECT_THROW(p.validate(), Error);
  p = JarlskogParams::identity(3);
  p.alpha.pop_back();
  EXPECT_THROW(p.validate(), Error);
}

TEST(HaarUnitary, IsUnitaryAndSeeded) {
  const CMatrix a = haar_unitary(4, 7);
  EXPECT_LT((a.adjoint() * a - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(a, haar_unitary(4, 7));
  EXPECT_NE(a, haar_unitary(4, 8));
}

TEST(LuFidelity, SameStateIsOneAtIdentity) {
  const auto psi = random_pure_state(SystemShape({2, 3, 2}), 1);
  const auto r = lu_fidelity(psi, psi, small_budget());
  EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
  EXPECT_TRUE(r.equal);
  for (const auto& u : r.unitaries) EXPECT_LT((u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(LuFidelity, RecoversBitFlippedW) {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const std::vector<CMatrix> flips(3, x);
  const auto flipped = apply_local_unitaries(w_state(3), flips);
  const auto r = lu_fidelity(flipped, w_state(3), small_budget());
  EXPECT_GE(r.fidelity, 1.0 - 1e-6);
  EXPECT_TRUE(r.equal);
  EXPECT_NEAR(std::abs(overlap(flipped, apply_local_unitaries(w_state(3), r.unitaries))), r.fidelity, 1e-12);
}

TEST(LuFidelity, RecoversMTildeInARandomFrame) {
  const auto psi = apply_local_unitaries(m_tilde(), random_frames(m_tilde().shape(), 11));
  const auto r = lu_fidelity(psi, m_tilde());
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.converged);
}

TEST(LuFidelity, DistinguishesGhzFromW) {
  const auto r = lu_fidelity(ghz(3), w_state(3), small_budget());
  EXPECT_FALSE(r.equal);
  EXPECT_LT(r.fidelity, 0.9);
}

TEST(LuFidelity, SymmetricInItsArguments) {
  const SystemShape shape({2, 2, 2});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto a = random_pure_state(shape, seed);
    const auto b = random_pure_state(shape, seed + 10);
    EXPECT_NEAR(lu_fidelity(a, b).fidelity, lu_fidelity(b, a).fidelity, 1e-6);
  }
}

TEST(LuFidelity, ShapeMismatchThrows) {
  EXPECT_THROW(lu_fidelity(ghz(3), bell_qudit(2)), ShapeError);
}

TEST(SearchBudget, Validation) {
  SearchBudget b;
  b.restarts = 0;
  EXPECT_THROW(b.validate(), Error);
  b = SearchBudget{};
  b.evaluations = 0;
  EXPECT_THROW(b.validate(), Error);
}

TEST(Sparsify, ScrambledBellPair) {
  const auto psi = apply_local_unitaries(bell_qudit(2), random_frames(SystemShape({2, 2}), 5));
  const auto r = sparsify(psi, small_budget());
  EXPECT_NEAR(r.l1, std::sqrt(2.0), 1e-6);
  EXPECT_EQ(nonzero_count(r.state, 1e-4), 2);
  EXPECT_NEAR(std::abs(overlap(r.state, apply_local_unitaries(psi, r.unitaries))), 1.0, 1e-12);
}

TEST(Sparsify, GhzIsAlreadySparse) {
  const auto r = sparsify(ghz(3), small_budget());
  EXPECT_NEAR(r.l1, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(std::abs(r.state[0]), 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(std::abs(r.state[7]), 1.0 / std::sqrt(2.0), 1e-6);
}

TEST(Sparsify, ScrambledWHasThreeEqualEntries) {
  const auto psi = apply_local_unitaries(w_state(3), random_frames(SystemShape::uniform(3, 2), 2));
  const auto r = sparsify(psi);
  EXPECT_NEAR(r.l1, std::sqrt(3.0), 1e-5);
  EXPECT_EQ(nonzero_count(r.state, 1e-3), 3);
  for (std::size_t i = 0; i < r.state.size(); ++i) {
    if (std::abs(r.state[i]) > 1e-3) {
      EXPECT_NEAR(std::abs(r.state[i]), 1.0 / std::sqrt(3.0), 1e-4);
    }
  }
}

TEST(L1Norm, Examples) {
  EXPECT_NEAR(l1_norm(ghz(3)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(l1_norm(w_state(3)), std::sqrt(3.0), 1e-15);
}

TEST(PrettyPrint, Format) {
  EXPECT_EQ(pretty_print(bell_qudit(2)),
            "|00> +0.7071067812 +0.0000000000\n"
            "|11> +0.7071067812 +0.0000000000\n");
  CVector amps(4, 0.0);
  amps[1] = 1e-10;
  amps[2] = complex(0.0, -1.0);
  EXPECT_EQ(pretty_print(PureState(SystemShape({2, 2}), amps).normalized()), "|10> +0.0000000000 -1.0000000000\n");
}

TEST(PrettyPrint, CommaSeparatedDigitsAboveTen) {
  const SystemShape shape({11, 2});
  const int digits[] = {10, 1};
  EXPECT_EQ(pretty_print(PureState::basis(shape, digits)), "|10,1> +1.0000000000 +0.0000000000\n");
}

TEST(SubspaceMatch, RotatedSpanMatches) {
  const auto target = SubspaceProjector::from_spanning(SystemShape::uniform(3, 2), {w_state(3), v_state()});
  const auto us = random_frames(target.shape(), 21);
  std::vector<PureState> rotated;
  for (const auto& b : target.basis()) rotated.push_back(apply_local_unitaries(b, us));
  const SubspaceProjector found(target.shape(), rotated);
  const auto m = subspace_lu_match(target, found, small_budget());
  EXPECT_TRUE(m.equal);
  EXPECT_GE(m.fidelity, 1.0 - 1e-6);
  for (double a : m.angles) EXPECT_LT(a, 1e-3);
}

TEST(SubspaceMatch, DifferentSpansDoNotMatch) {
  const SystemShape shape = SystemShape::uniform(3, 2);
  const auto target = SubspaceProjector::from_spanning(shape, {w_state(3), v_state()});
  const int d000[] = {0, 0, 0};
  const int d111[] = {1, 1, 1};
  const SubspaceProjector other(shape, {PureState::basis(shape, d000), PureState::basis(shape, d111)});
  EXPECT_FALSE(subspace_lu_match(target, other, small_budget()).equal);
}

TEST(SubspaceMatch, ConjugateWVSpanIsNotLuEquivalent) {
  const SystemShape shape = SystemShape::uniform(3, 2);
  const auto v = v_state();
  CVector vbar(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vbar[i] = std::conj(v[i]);
  const auto a = SubspaceProjector::from_spanning(shape, {w_state(3), v});
  const auto b = SubspaceProjector::from_spanning(shape, {w_state(3), PureState(shape, vbar)});
  const auto m = subspace_lu_match(a, b, small_budget());
  EXPECT_FALSE(m.equal);
  EXPECT_NEAR(m.fidelity, 0.5, 1e-6);
  SeesawConfig cfg;
  cfg.restarts = 40;
  EXPECT_NEAR(best_product_overlap_with_projector(b, cfg).measure(), 5.0 / 9.0, 1e-8);
}
