#include <gtest/gtest.h>

#include "properties.hpp"

using namespace geomax::props;

namespace {

void expect_pass(const Verdict& v) { EXPECT_TRUE(v.passed) << v.name << ": " << v.detail; }

}  // namespace

TEST(Properties, OverlapDecrease) { expect_pass(overlap_decrease(300, 1)); }
TEST(Properties, AscentMonotonicity) { expect_pass(ascent_monotonicity(40, 2)); }
TEST(Properties, NormBoundGrid) { expect_pass(norm_bound_grid()); }
TEST(Properties, SeesawMonotone) { expect_pass(seesaw_monotone(100, 3)); }
TEST(Properties, BipartiteSvd) { expect_pass(bipartite_svd(300, 4)); }
TEST(Properties, TwoQubitGrid) { expect_pass(two_qubit_grid(1, 5)); }
TEST(Properties, LuInvariance) { expect_pass(lu_invariance(10, 6)); }
TEST(Properties, ComplementarySpectra) { expect_pass(complementary_spectra(30, 7)); }
TEST(Properties, GraphEdgeOrder) { expect_pass(graph_edge_order(8)); }
TEST(Properties, JarlskogUnitarity) { expect_pass(jarlskog_unitarity(50, 9)); }
