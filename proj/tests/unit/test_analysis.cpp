#include <gtest/gtest.h>

#include <cmath>

#include "geomax/analysis.hpp"
#include "geomax/zoo.hpp"

using namespace geomax;

TEST(PartySubsets, LexicographicOrder) {
  EXPECT_EQ(party_subsets(4, 2),
            (std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(party_subsets(7, 3).size(), 35u);
}

TEST(MarginalSpectra, Examples) {
  for (const auto& [keep, spec] : marginal_spectra(ghz(3), 1)) {
    ASSERT_EQ(spec.size(), 2u);
    EXPECT_NEAR(spec[0], 0.5, 1e-12);
    EXPECT_NEAR(spec[1], 0.5, 1e-12);
  }
  for (const auto& [keep, spec] : marginal_spectra(w_state(3), 1)) {
    EXPECT_NEAR(spec[0], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(spec[1], 1.0 / 3.0, 1e-12);
  }
  const auto m = marginal_spectra(m_tilde(), 2);
  EXPECT_EQ(m.size(), 6u);
  EXPECT_LT(max_spectrum_spread(m_tilde(), 2), 1e-12);
  EXPECT_GT(max_flatness_deviation(m_tilde(), 2), 1e-3);
}

TEST(MarginalSpectra, DescendingAndComplementary) {
  const auto psi = random_pure_state(SystemShape({2, 3, 2, 2}), 1);
  const auto one = marginal_spectra(psi, 1);
  const auto three = marginal_spectra(psi, 3);
  for (const auto& [keep, spec] : one) {
    for (std::size_t i = 1; i < spec.size(); ++i) EXPECT_GE(spec[i - 1], spec[i]);
    std::vector<int> rest;
    for (int p = 0; p < 4; ++p) {
      if (p != keep[0]) rest.push_back(p);
    }
    const auto& other = three.at(rest);
    for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(spec[i], other[i], 1e-10);
    for (std::size_t i = spec.size(); i < other.size(); ++i) EXPECT_NEAR(other[i], 0.0, 1e-10);
  }
  EXPECT_THROW(marginal_spectra(psi, 0), Error);
  EXPECT_THROW(marginal_spectra(psi, 4), Error);
}

TEST(Uniformity, Examples) {
  EXPECT_TRUE(is_k_uniform(named_graph_state("ring5"), 2));
  EXPECT_TRUE(is_k_uniform(antisymmetric(4), 1));
  EXPECT_FALSE(is_ame(antisymmetric(4)));
  const int zeros[] = {0, 0, 0, 0};
  EXPECT_FALSE(is_k_uniform(PureState::basis(SystemShape::uniform(4, 2), zeros), 1));
  EXPECT_TRUE(is_ame(ame_43()));
}

TEST(Uniformity, AmeImpliesEveryLowerLevel) {
  for (const auto& s : {ame_3d(3), ame_43(), ame_5d(2), ame_5d(3), phi_34(), named_graph_state("g6"),
                        named_graph_state("ring5"), named_graph_state("ame44_pairs")}) {
    ASSERT_TRUE(is_ame(s)) << s.shape().to_string();
    for (int k = 1; k <= s.shape().parties() / 2; ++k) EXPECT_TRUE(is_k_uniform(s, k));
  }
}

TEST(Mms, Examples) {
  const auto m = mms_report(m_tilde());
  EXPECT_TRUE(m.is_mms);
  EXPECT_EQ(m.k_star, 2);
  EXPECT_FALSE(is_ame(m_tilde()));

  const auto a = mms_report(ame_43());
  EXPECT_TRUE(a.is_mms);
  EXPECT_EQ(a.k_star, 2);

  // W: 1-body spectra agree, so it is MMS at k* = 1.
  const auto w = mms_report(w_state(3));
  EXPECT_TRUE(w.is_mms);
  EXPECT_EQ(w.k_star, 1);

  const auto r = mms_report(random_pure_state(SystemShape::uniform(4, 2), 3));
  EXPECT_FALSE(r.is_mms);
  EXPECT_EQ(r.k_star, 1);
}

TEST(Mms, AntisymmetricFour) {
  // 1-uniform but the 2-body spectra of the antisymmetric state coincide by symmetry.
  const auto m = mms_report(antisymmetric(4));
  EXPECT_EQ(m.k_star, 2);
  EXPECT_TRUE(m.is_mms);
}
