#include <gtest/gtest.h>

#include <random>

#include "ncg/errors.hpp"
#include "ncg/models.hpp"
#include "ncg/spectral.hpp"
#include "testing.hpp"

using namespace ncg;

namespace {

const CheckRecord& get(const CheckList& c, const std::string& name) {
  const CheckRecord* r = c.find(name);
  if (!r) throw std::runtime_error("missing check " + name);
  return *r;
}

// The opposite action computed without the kernel formula: apply J^-1, then
// pi(b*), then J, column by column.
CMatrix opposite_direct(const RealSpectralTriple& t, const CMatrix& b) {
  const Index n = t.hilbert_dim();
  const CMatrix& k = t.j.kernel();
  const CMatrix pb = t.pi(b.adjoint());
  CMatrix out(n, n);
  for (Index c = 0; c < n; ++c) {
    const CVector e = CVector::Unit(n, c);
    const CVector jinv = k.transpose() * e.conjugate();
    out.col(c) = t.j.apply(pb * jinv);
  }
  return out;
}

}  // namespace

TEST(Spectral, PresetsPassAxioms) {
  for (const char* s : {"hs:N=1", "hs:N=2", "hs:N=3", "ym:k=2,N=2", "ym:k=3,N=1", "comm:k=4"}) {
    const auto t = build_triple(parse_model_spec(s));
    const CheckList c = check_axioms(t);
    for (const auto& r : c.records()) EXPECT_TRUE(r.passed) << s << " " << r.name << " " << r.residual;
  }
}

TEST(Spectral, OrderOneIsExactForHsModel) {
  const auto t = build_hs_model(3, 5);
  EXPECT_LT(get(check_axioms(t), "order_one").residual, 1e-10);
}

TEST(Spectral, OppositeMatchesDirectAntiLinearAction) {
  std::mt19937_64 rng(31);
  for (const char* s : {"hs:N=3", "ym:k=2,N=2"}) {
    const auto t = build_triple(parse_model_spec(s));
    for (int k = 0; k < 5; ++k) {
      const CMatrix b = random_element(t.algebra, rng);
      EXPECT_LT((t.opposite(b) - opposite_direct(t, b)).norm(), 1e-11);
    }
  }
}

TEST(Spectral, HsOppositeIsRightMultiplication) {
  std::mt19937_64 rng(32);
  const auto t = build_hs_model(3);
  const CMatrix b = ncg::testing::gaussian(3, 3, rng);
  EXPECT_LT((t.opposite(b) - kron(b.transpose(), identity(3))).norm(), 1e-12);
}

TEST(Spectral, HoppingBreaksOrderOne) {
  const auto t = build_finite_ym(2, 2, 0.4);
  const CheckList c = check_axioms(t);
  EXPECT_FALSE(get(c, "order_one").passed);
  EXPECT_TRUE(get(c, "commutant").passed);
  EXPECT_TRUE(get(c, "j_dirac").passed);
  EXPECT_TRUE(get(c, "dirac_self_adjoint").passed);
}

TEST(Spectral, CorruptedRealStructureFails) {
  const auto good = build_hs_model(2);
  // A unitary kernel that is not the transposition: J no longer commutes with D.
  CMatrix k = transposition_matrix(2);
  k.col(0).swap(k.col(3));
  const auto bad = make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return CMatrix(kron(identity(2), x)); },
                               good.dirac, k, 1, 1, "bad");
  const CheckList c = check_axioms(bad);
  EXPECT_FALSE(c.all_passed());
  const CheckList aj = verify_aj_properties(bad);
  EXPECT_FALSE(aj.all_passed());
}

TEST(Spectral, OneFormDimensions) {
  // M_2: pi(a)[D, pi(b)] = L_{a[M,b]} spans all of M_2 for generic M.
  EXPECT_EQ(one_form_space(build_hs_model(2)).dim(), 4);
  EXPECT_EQ(one_form_space(build_hs_model(1)).dim(), 0);
  EXPECT_EQ(one_form_space(build_commutative(3)).dim(), 0);
  // Hopping between two points adds off-diagonal forms.
  EXPECT_EQ(one_form_space(build_finite_ym(2, 1, 0.5)).dim(), 2);
  EXPECT_EQ(one_form_space(build_finite_ym(2, 2, 0.5)).dim(), 16);
}

TEST(Spectral, CdAlgebraGrading) {
  // Two points joined by a hopping: diagonal words are even, off-diagonal odd.
  const CDAlgebra& cd = c_d_algebra(build_finite_ym(2, 1, 0.7));
  EXPECT_EQ(cd.even.dim(), 2);
  EXPECT_EQ(cd.odd.dim(), 2);
  EXPECT_EQ(cd.algebra.dim(), 4);
  EXPECT_TRUE(cd.grading_consistent());
  // A triangle has odd cycles, so the parity is not well defined.
  const CDAlgebra& tri = c_d_algebra(build_finite_ym(3, 1, 0.7));
  EXPECT_EQ(tri.algebra.dim(), 9);
  EXPECT_FALSE(tri.grading_consistent());
  const CDAlgebra& hs = c_d_algebra(build_hs_model(2));
  EXPECT_EQ(hs.algebra.dim(), 4);
  EXPECT_FALSE(hs.grading_consistent());
}

TEST(Spectral, AjDimensionsAndProperties) {
  EXPECT_EQ(compute_aj(build_hs_model(3)).dim(), 1);
  EXPECT_EQ(compute_aj(build_finite_ym(3, 2, 0.0)).dim(), 3);
  EXPECT_EQ(compute_aj(build_commutative(5)).dim(), 5);
  for (const char* s : {"hs:N=2", "ym:k=2,N=2", "comm:k=3"}) {
    const CheckList c = verify_aj_properties(build_triple(parse_model_spec(s)));
    for (const auto& r : c.records()) EXPECT_TRUE(r.passed) << s << " " << r.name;
  }
}

TEST(Spectral, UnitaryEquivalenceUsesTranspose) {
  std::mt19937_64 rng(33);
  const auto t = build_hs_model(2);
  const CMatrix g = ncg::testing::gaussian(4, 4, rng);
  const CMatrix u = exp_skew_hermitian(0.5 * (g - g.adjoint()));
  const auto t2 = conjugate_triple(t, u);
  EXPECT_TRUE(unitary_equivalent(t, t2, u).all_passed());
  for (const auto& r : check_axioms(t2).records()) EXPECT_TRUE(r.passed) << r.name;
  // The adjoint form U K U* is not the conjugated real structure.
  EXPECT_GT((u * t.j.kernel() * u.adjoint() - t2.j.kernel()).norm(), 1e-3);
}

TEST(Spectral, RestrictionToSubalgebra) {
  const auto t = build_finite_ym(2, 2, 0.0);
  const FiniteStarAlgebra z = center(t.algebra);
  const auto r = restrict_triple(t, z);
  EXPECT_EQ(r.algebra.dim(), 2);
  EXPECT_TRUE(check_axioms(r).all_passed());
}

TEST(Spectral, MakeTripleValidatesShapes) {
  EXPECT_THROW(make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return x; }, identity(3),
                           identity(2), 1, 1, "x"),
               DimensionMismatch);
  EXPECT_THROW(make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return x; }, identity(2),
                           2.0 * identity(2), 1, 1, "x"),
               BadParameters);
}

TEST(Spectral, LeftOnlyDiracBreaksRealStructure) {
  const CMatrix m = random_hermitian(2, 3);
  const auto t = make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return CMatrix(kron(identity(2), x)); },
                             kron(identity(2), m), transposition_matrix(2), 1, 1, "left");
  const CheckList c = check_axioms(t);
  EXPECT_TRUE(get(c, "order_one").passed);
  EXPECT_FALSE(get(c, "j_dirac").passed);
}

TEST(Spectral, SmallUnitaryPerturbationOfJIsDetected) {
  std::mt19937_64 rng(34);
  const auto good = build_hs_model(2);
  const CMatrix g = ncg::testing::gaussian(4, 4, rng);
  const CMatrix k = good.j.kernel() * exp_skew_hermitian(1e-3 * 0.5 * (g - g.adjoint()));
  const auto bad = make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return CMatrix(kron(identity(2), x)); },
                               good.dirac, k, 1, 1, "perturbed");
  EXPECT_FALSE(verify_aj_properties(bad).all_passed());
  EXPECT_FALSE(check_axioms(bad).all_passed());
}

TEST(Spectral, ZeroDiracHasNoForms) {
  const auto t = make_triple(full_matrix_algebra(2), [](const CMatrix& x) { return CMatrix(kron(identity(2), x)); },
                             CMatrix::Zero(4, 4), transposition_matrix(2), 1, 1, "flat");
  EXPECT_EQ(one_form_space(t).dim(), 0);
  EXPECT_TRUE(verify_aj_properties(t).all_passed());
}
