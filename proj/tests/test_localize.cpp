#include <gtest/gtest.h>

#include <random>

#include "ncg/gauge.hpp"
#include "ncg/localize.hpp"
#include "ncg/models.hpp"

using namespace ncg;

TEST(Localize, YangMillsFibers) {
  const auto t = build_finite_ym(3, 2, 0.0);
  const FiberDecomposition dec = localize(t);
  ASSERT_EQ(dec.fibers.size(), 3u);
  for (const auto& f : dec.fibers) EXPECT_EQ(f.dim(), 4);
  EXPECT_TRUE(dec.checks.all_passed());
  const GroupBundleDims g = group_bundle_dims(t, dec);
  EXPECT_EQ(g.dim_gauge, 9);
  EXPECT_EQ(g.gauge_dims, (std::vector<Index>{3, 3, 3}));
  EXPECT_TRUE(g.checks.all_passed());
}

TEST(Localize, SinglePointAndCommutative) {
  const FiberDecomposition hs = localize(build_hs_model(3));
  ASSERT_EQ(hs.fibers.size(), 1u);
  EXPECT_EQ(hs.fibers[0].dim(), 9);
  const FiberDecomposition c = localize(build_commutative(5));
  ASSERT_EQ(c.fibers.size(), 5u);
  for (const auto& f : c.fibers) EXPECT_EQ(f.dim(), 1);
}

TEST(Localize, SeedDoesNotChangeTheDecomposition) {
  const auto t = build_finite_ym(2, 2, 0.0);
  const FiberDecomposition a = localize(t, 1), b = localize(t, 99);
  ASSERT_EQ(a.base.size(), b.base.size());
  for (size_t x = 0; x < a.base.size(); ++x)
    EXPECT_LT((a.base.projections[x] - b.base.projections[x]).norm(), 1e-9);
}

TEST(Localize, NormIsSupAndGaugeActionIsFiberwise) {
  const auto t = build_finite_ym(2, 2, 0.0);
  const FiberDecomposition dec = localize(t);
  std::mt19937_64 rng(51);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = random_element(t.algebra, rng);
    const NormComparison n = norm_is_sup(t, dec, a);
    EXPECT_LT(n.residual(), 1e-10);
    EXPECT_LT(fiber_gauge_action(dec, random_unitary(t.algebra, rng()), a), 1e-10);
  }
}

TEST(Localize, OmegaBundleWithHopping) {
  // Hopping makes C_D all of M_2. Each p_x C_D is a row, so the dimension
  // count still adds up, but p_x is no longer central and C_D is not a bundle
  // over the points.
  const auto t = build_finite_ym(2, 1, 0.5);
  const FiberDecomposition dec = localize(t);
  const OmegaBundle b = omega_bundle(t, dec);
  EXPECT_EQ(b.cd_dim, 4);
  ASSERT_EQ(b.fibers.size(), 2u);
  EXPECT_EQ(b.fibers[0].space.dim(), 2);
  EXPECT_EQ(b.fibers[1].space.dim(), 2);
  EXPECT_TRUE(b.checks.find("omega_fiber_dimensions")->passed);
  EXPECT_FALSE(b.checks.find("projections_central_in_cd")->passed);
  EXPECT_FALSE(b.checks.all_passed());
}

TEST(Localize, OmegaBundleWithoutHopping) {
  const auto t = build_finite_ym(2, 2, 0.0);
  const OmegaBundle b = omega_bundle(t, localize(t));
  EXPECT_TRUE(b.checks.all_passed());
  ASSERT_EQ(b.fibers.size(), 2u);
  EXPECT_EQ(b.fibers[0].space.dim() + b.fibers[1].space.dim(), b.cd_dim);
}

TEST(Localize, JsonTable) {
  const auto t = build_finite_ym(2, 2, 0.0);
  const FiberDecomposition dec = localize(t);
  const auto j = to_json(dec, group_bundle_dims(t, dec));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["fiber_dim"], 4);
  EXPECT_EQ(j[0]["projection_rank"], 2);
  EXPECT_EQ(j[1]["gauge_fiber_dim"], 3);
}
