#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "geomax/closest_product.hpp"
#include "geomax/subspace.hpp"
#include "geomax/zoo.hpp"

using namespace geomax;

namespace {

PureState combine(const SubspaceProjector& p, const std::vector<complex>& c) {
  CVector v(p.shape().total_dim(), complex{0.0});
  for (int i = 0; i < p.rank(); ++i) {
    const auto& b = p.basis()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[static_cast<std::size_t>(i)] * b[j];
  }
  return PureState(p.shape(), v).normalized();
}

}  // namespace

TEST(SubspaceProjector, RejectsBadBases) {
  const SystemShape shape({2, 2});
  const int d00[] = {0, 0};
  const auto a = PureState::basis(shape, d00);
  EXPECT_THROW(SubspaceProjector(shape, {a, a}), Error);
  EXPECT_THROW(SubspaceProjector(shape, {}), Error);
  std::vector<PureState> full;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const int d[] = {i, j};
      full.push_back(PureState::basis(shape, d));
    }
  }
  EXPECT_THROW(SubspaceProjector(shape, full), Error);
}

TEST(SubspaceProjector, MatrixIsAProjector) {
  const auto p = random_subspace(SystemShape({2, 3}), 3, 1);
  const CMatrix m = p.matrix();
  EXPECT_LT((m * m - m).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(m.trace().real(), 3.0, 1e-12);
}

TEST(ProjectorOverlap, RankOneReducesToBpa) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto psi = random_pure_state(SystemShape({2, 2, 2}), seed);
    const SubspaceProjector p(psi.shape(), {psi});
    const double lam = best_product_approximation(psi, SeesawConfig{}).lambda;
    EXPECT_NEAR(best_product_overlap_with_projector(p, SeesawConfig{}).value, lam * lam, 1e-9);
  }
}

TEST(ProjectorOverlap, ContainsProductStateGivesZeroMeasure) {
  const SystemShape shape({2, 2});
  const int d01[] = {0, 1};
  const auto p = SubspaceProjector::from_spanning(shape, {PureState::basis(shape, d01), bell_qudit(2)});
  EXPECT_NEAR(best_product_overlap_with_projector(p, SeesawConfig{}).measure(), 0.0, 1e-8);
}

TEST(ProjectorOverlap, WVSpan) {
  const auto p = SubspaceProjector::from_spanning(SystemShape::uniform(3, 2), {w_state(3), v_state()});
  SeesawConfig cfg;
  cfg.restarts = 40;
  EXPECT_NEAR(best_product_overlap_with_projector(p, cfg).value, 4.0 / 9.0, 1e-8);
}

TEST(ProjectorOverlap, SupremumDominatesEveryMember) {
  // Every state in im(P) has lambda^2 <= sup <pi|P|pi>.
  const auto p = random_subspace(SystemShape({2, 2, 2}), 2, 3);
  SeesawConfig cfg;
  cfg.restarts = 40;
  const double sup = best_product_overlap_with_projector(p, cfg).value;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int s = 0; s < 1000; ++s) {
    const auto psi = combine(p, {complex(n(rng), n(rng)), complex(n(rng), n(rng))});
    const double lam = best_product_approximation(psi, SeesawConfig{}).lambda;
    ASSERT_LE(lam * lam, sup + 1e-9) << "sample " << s;
  }
  for (const auto& b : p.basis()) {
    const double lam = best_product_approximation(b, SeesawConfig{}).lambda;
    EXPECT_LE(lam * lam, sup + 1e-9);
  }
}

TEST(SubspaceStep, TinyThetaLeavesSpanAlmostUnchanged) {
  const auto p = random_subspace(SystemShape({2, 3}), 2, 4);
  const auto pi = best_product_overlap_with_projector(p, SeesawConfig{}).pi;
  const auto q = subspace_ascend_step(p, pi, 1e-12);
  for (double a : principal_angles(p, q)) EXPECT_LT(a, 1e-6);
}

TEST(SubspaceStep, PreservesRankAndLowersOverlap) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_subspace(SystemShape({2, 2, 2}), 3, seed);
    const auto best = best_product_overlap_with_projector(p, SeesawConfig{});
    const auto q = subspace_ascend_step(p, best.pi, 0.05);
    EXPECT_EQ(q.rank(), 3);
    EXPECT_LT(q.expectation(best.pi), best.value);
  }
}

TEST(SubspaceStep, RankOneFollowsTheStateAscent) {
  // For k = 1 the top eigenvector of P - theta |pi><pi| is the state-ascent
  // direction to first order.
  const auto psi = random_pure_state(SystemShape({2, 2, 2}), 6);
  const SubspaceProjector p(psi.shape(), {psi});
  const auto pi = best_product_approximation(psi, SeesawConfig{}).pi;
  const double theta = 1e-4;
  const auto q = subspace_ascend_step(p, pi, theta);
  const auto stepped = ascend_step(psi, pi, theta, DirectionMode::projected);
  const SubspaceProjector r(psi.shape(), {stepped});
  const auto a0 = principal_angles(p, q)[0];
  const auto a1 = principal_angles(q, r)[0];
  EXPECT_GT(a0, 0.0);
  EXPECT_LT(a1, 1e-6);
}

TEST(SubspaceStep, DegenerateCutThrows) {
  // P = |00><00|, pi = |00>: with theta = 1 the top two eigenvalues of
  // P - theta |pi><pi| are both zero.
  const SystemShape shape({2, 2});
  const int d00[] = {0, 0};
  const auto psi = PureState::basis(shape, d00);
  const SubspaceProjector p(shape, {psi});
  const ProductState pi(shape, {{1.0, 0.0}, {1.0, 0.0}});
  EXPECT_THROW(subspace_ascend_step(p, pi, 1.0), DegenerateCut);
}

TEST(PrincipalAngles, SameSpanIsZeroAndOrthogonalIsHalfPi) {
  const auto p = random_subspace(SystemShape({2, 3}), 2, 1);
  for (double a : principal_angles(p, p)) EXPECT_NEAR(a, 0.0, 1e-7);
  const SystemShape shape({2, 2});
  const int d00[] = {0, 0};
  const int d11[] = {1, 1};
  const SubspaceProjector a(shape, {PureState::basis(shape, d00)});
  const SubspaceProjector b(shape, {PureState::basis(shape, d11)});
  EXPECT_NEAR(principal_angles(a, b)[0], std::acos(0.0), 1e-12);
}

TEST(SubspaceAscent, TwoQubitPairsContainAProduct) {
  AscentConfig cfg = AscentConfig::defaults_for(SystemShape({2, 2}));
  cfg.iters_max = 200;
  const auto trace = run_subspace_ascent(SystemShape({2, 2}), 2, cfg, 0);
  EXPECT_NEAR(trace.best_measure, 0.0, 1e-8);
}

TEST(SubspaceAscent, MeasureImprovesOnThreeQubits) {
  AscentConfig cfg = AscentConfig::defaults_for(SystemShape::uniform(3, 2));
  cfg.iters_max = 300;
  cfg.stagnation_window = 50;
  cfg.theta_min = 1e-3;
  const auto trace = run_subspace_ascent(SystemShape::uniform(3, 2), 2, cfg, 1);
  EXPECT_GT(trace.best_measure, trace.records.front().measure);
  EXPECT_EQ(trace.best.rank(), 2);
}
