#include <gtest/gtest.h>

#include <random>

#include "ncg/errors.hpp"
#include "ncg/gauge.hpp"
#include "ncg/models.hpp"

using namespace ncg;

TEST(Gauge, LieAlgebraDimensions) {
  struct Case {
    RealSpectralTriple t;
    Index dim;
  };
  const std::vector<Case> cases{{build_hs_model(2), 3},
                                {build_hs_model(3), 8},
                                {build_finite_ym(2, 2, 0.0), 6},
                                {build_finite_ym(2, 2, 0.5), 6},
                                {build_finite_ym(3, 1, 0.5), 0},
                                {build_commutative(4), 0}};
  for (const auto& c : cases) {
    const GaugeLieAlgebra g = gauge_lie_algebra(c.t);
    EXPECT_EQ(g.dim, c.dim) << c.t.label;
    EXPECT_TRUE(g.checks.all_passed()) << c.t.label;
  }
}

TEST(Gauge, ElementsPreserveRealStructure) {
  const auto t = build_finite_ym(2, 2, 0.0);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GaugeElement g = gauge_element(t, random_unitary(t.algebra, s));
    EXPECT_TRUE(gauge_element_checks(t, g).all_passed());
  }
  EXPECT_THROW(gauge_element(t, 2.0 * t.algebra.unit), NotUnitary);
  // A permutation mixing the two blocks is unitary but not in A.
  CMatrix outside = identity(4);
  outside.row(0).swap(outside.row(2));
  EXPECT_THROW(gauge_element(t, outside), NotUnitary);
}

TEST(Gauge, KernelOfAdIsUnitaryAj) {
  const auto t = build_finite_ym(2, 2, 0.0);
  // Central phases lie in A_J and act trivially.
  CMatrix z = t.algebra.unit;
  z.block(0, 0, 2, 2) *= std::polar(1.0, 0.9);
  const AdKernelResult central = ad_kernel_check(t, z);
  EXPECT_TRUE(central.in_kernel);
  EXPECT_TRUE(central.in_aj);
  const AdKernelResult generic = ad_kernel_check(t, random_unitary(t.algebra, 3));
  EXPECT_FALSE(generic.in_kernel);
  EXPECT_FALSE(generic.in_aj);
  EXPECT_TRUE(generic.consistent());
}

TEST(Gauge, PerturbationCertificates) {
  const auto t = build_hs_model(2);
  std::mt19937_64 rng(41);
  EXPECT_TRUE(certify(t, identity_perturbation(t)).passed());
  EXPECT_TRUE(certify(t, random_perturbation(t, rng)).passed());
  // Adding (u, b) and (1, -u b) keeps the normalization but breaks the symmetry.
  const CMatrix u = random_unitary(t.algebra, 5);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 0.3;
  const Perturbation lopsided{{{u, u.adjoint()}, {u, b}, {t.algebra.unit, -u * b}}};
  const PertCertificates c = certify(t, lopsided);
  EXPECT_LT(c.normalization, 1e-12);
  EXPECT_GT(c.self_adjointness, 1e-3);
  EXPECT_THROW(pert_product(t, lopsided, identity_perturbation(t)), MembershipViolated);
}

TEST(Gauge, ZeroFluctuationLeavesDiracUnchanged) {
  const auto t = build_hs_model(3);
  const OneForm w = gauge_field(t, identity_perturbation(t));
  EXPECT_LT(w.evaluated.norm(), 1e-12);
  EXPECT_LT((fluctuate(t, w.evaluated) - t.dirac).norm(), 1e-12);
}

TEST(Gauge, FluctuationIsSelfAdjointAndReal) {
  std::mt19937_64 rng(42);
  for (const char* s : {"hs:N=2", "ym:k=2,N=2"}) {
    const auto t = build_triple(parse_model_spec(s));
    const Perturbation p = random_perturbation(t, rng, 3);
    const OneForm w = gauge_field(t, p);
    EXPECT_TRUE(w.self_adjoint);
    const CMatrix d = fluctuate(t, w.evaluated);
    EXPECT_LT(hermiticity_residual(d), 1e-10);
    const CMatrix& k = t.j.kernel();
    EXPECT_LT((k * d.conjugate() - d * k).norm(), 1e-10);
    EXPECT_LT((doubled_fluctuation(t, p) - d).norm(), 1e-10);
  }
}

TEST(Gauge, TransformationIsCovariant) {
  std::mt19937_64 rng(43);
  const auto t = build_finite_ym(2, 2, 0.0);
  const OneForm w = gauge_field(t, random_perturbation(t, rng));
  const OneForm w0 = gauge_field(t, random_perturbation(t, rng));
  const GaugeTransformed g = gauge_transform_field(t, w, w0, random_unitary(t.algebra, 9));
  EXPECT_LT(g.covariance_residual, 1e-9);
  EXPECT_TRUE(g.field.self_adjoint);
  EXPECT_TRUE(g.background.self_adjoint);
}

TEST(Gauge, FromUnitaryIsHomomorphism) {
  const auto t = build_hs_model(3);
  const CMatrix u = random_unitary(t.algebra, 1), v = random_unitary(t.algebra, 2);
  const CMatrix lhs = left_right_operator(t, from_unitary(t, u * v));
  const CMatrix rhs = left_right_operator(t, pert_product(t, from_unitary(t, u), from_unitary(t, v)));
  EXPECT_LT((lhs - rhs).norm(), 1e-10);
}
