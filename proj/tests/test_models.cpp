#include <gtest/gtest.h>

#include "ncg/errors.hpp"
#include "ncg/models.hpp"
#include "ncg/nctorus.hpp"

using namespace ncg;

namespace {

// Equivariant functions solved as a linear system over all block-diagonal
// matrices: f((g + 1, j)) - w f((g, j)) w* = 0.
Index orbifold_oracle_dim(int q, int p, int m, Index* center_dim) {
  const auto [r1, r2] = clock_shift(q, p);
  const Index blocks = Index(q) * m, unknowns = blocks * q * q;
  CMatrix sys = CMatrix::Zero(blocks * q * q, unknowns);
  auto var = [&](Index block, Index a, Index b) { return block * q * q + a + b * q; };
  Index row = 0;
  for (int j = 0; j < m; ++j)
    for (int g = 0; g < q; ++g) {
      const Index here = Index(j) * q + g, there = Index(j) * q + (g + 1) % q;
      for (Index a = 0; a < q; ++a)
        for (Index b = 0; b < q; ++b, ++row) {
          sys(row, var(there, a, b)) += 1.0;
          // (w f w*)_{ab} = sum_{cd} w_ac f_cd conj(w_bd)
          for (Index c = 0; c < q; ++c)
            for (Index d = 0; d < q; ++d) sys(row, var(here, c, d)) -= r2(a, c) * std::conj(r2(b, d));
        }
    }
  Eigen::FullPivLU<CMatrix> lu(sys);
  lu.setThreshold(1e-10);
  const CMatrix kernel = lu.kernel();
  const Index n = blocks * q;
  std::vector<CMatrix> f;
  for (Index c = 0; c < kernel.cols(); ++c) {
    CMatrix x = CMatrix::Zero(n, n);
    for (Index blk = 0; blk < blocks; ++blk)
      for (Index a = 0; a < q; ++a)
        for (Index b = 0; b < q; ++b) x(blk * q + a, blk * q + b) = kernel(var(blk, a, b), c);
    f.push_back(x);
  }
  // Center: coordinates c with sum_k c_k [f_k, f_l] = 0 for every l.
  CMatrix csys(Index(f.size()) * n * n, Index(f.size()));
  for (size_t k = 0; k < f.size(); ++k)
    for (size_t l = 0; l < f.size(); ++l)
      csys.block(Index(l) * n * n, Index(k), n * n, 1) = vec(f[k] * f[l] - f[l] * f[k]);
  Eigen::FullPivLU<CMatrix> clu(csys);
  clu.setThreshold(1e-10);
  *center_dim = clu.dimensionOfKernel();
  return kernel.cols();
}

}  // namespace

TEST(Models, OrbifoldMatchesLinearOracle) {
  for (auto [q, p, m] : {std::tuple{1, 0, 3}, {2, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    const OrbifoldModel om = build_orbifold_algebra(q, p, m);
    Index oracle_center = 0;
    EXPECT_EQ(om.algebra.dim(), orbifold_oracle_dim(q, p, m, &oracle_center));
    EXPECT_EQ(om.center_dim, oracle_center);
    EXPECT_TRUE(om.checks.all_passed());
  }
  EXPECT_THROW(build_orbifold_algebra(4, 2, 1), BadParameters);
  EXPECT_THROW(build_orbifold_algebra(3, 1, 0), BadParameters);
}

TEST(Models, FiniteYangMillsReducesToHs) {
  const auto a = build_finite_ym(1, 3, 0.0, 4), b = build_hs_model(3, 4);
  EXPECT_LT((a.dirac - b.dirac).norm(), 1e-14);
  EXPECT_LT((a.j.kernel() - b.j.kernel()).norm(), 1e-14);
}

TEST(Models, HoppingMustBeHermitian) {
  CMatrix hop = CMatrix::Zero(2, 2);
  hop(0, 1) = cplx(0.0, 1.0);
  hop(1, 0) = cplx(0.0, 1.0);
  EXPECT_THROW(build_finite_ym(2, 2, hop), BadHopping);
  EXPECT_THROW(build_finite_ym(2, 2, CMatrix::Zero(3, 3)), BadHopping);
  hop(1, 0) = cplx(0.0, -1.0);
  EXPECT_NO_THROW(build_finite_ym(2, 2, hop));
}

TEST(Models, TranspositionMatrix) {
  CMatrix x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  // P vec(x) = vec(x^T) for square x; check on a square block.
  const CMatrix s = x.leftCols(2);
  EXPECT_LT((transposition_matrix(2) * vec(s) - vec(s.transpose())).norm(), 1e-15);
}

TEST(Models, SpecParsing) {
  const ModelSpec s = parse_model_spec("ym:k=2,N=2,seed=7");
  EXPECT_EQ(s.kind, "ym");
  EXPECT_EQ(s.integer("k", 0), 2);
  EXPECT_EQ(s.integer("seed", 1), 7);
  EXPECT_EQ(s.real("hop", 0.25), 0.25);
  for (const char* bad : {"", "hs", "hs:", "hs:N", "hs:N=x", "hs:N=2,N=3", "hs:M=2", "torus:q=2",
                          "ym:k=2", "hs:N=2,,seed=1"})
    EXPECT_THROW(build_triple(parse_model_spec(bad)), ParseError) << bad;
  EXPECT_THROW(build_triple(parse_model_spec("orbifold:q=3,p=1,m=2")), ParseError);
  EXPECT_THROW(build_triple(parse_model_spec("hs:N=0")), ParseError);
}

TEST(Models, SeedsAreDeterministic) {
  const auto a = build_triple(parse_model_spec("hs:N=3,seed=9"));
  const auto b = build_triple(parse_model_spec("hs:N=3"), 9);
  EXPECT_EQ((a.dirac - b.dirac).norm(), 0.0);
  EXPECT_GT((a.dirac - build_hs_model(3, 10).dirac).norm(), 1e-3);
}

TEST(Models, ConfigDocuments) {
  using nlohmann::json;
  const auto t = triple_from_config(json::parse(R"({"preset": "ym:k=2,N=1", "label": "pair"})"));
  EXPECT_EQ(t.label, "pair");
  EXPECT_EQ(t.hilbert_dim(), 2);

  const auto d = triple_from_config(json::parse(R"({
    "algebra": {"blocks": [1, 1]}, "representation": "defining",
    "dirac": {"matrix": {"real": [[1, 0], [0, 2]]}}, "real_structure": "conjugation"})"));
  EXPECT_TRUE(check_axioms(d).all_passed());

  const auto s = triple_from_config(json::parse(R"({
    "algebra": {"blocks": [2]}, "dirac": {"random_seed": 3}, "real_structure": "adjoint",
    "epsilon": 1, "epsilon_prime": 1})"));
  EXPECT_EQ(s.hilbert_dim(), 4);
  EXPECT_TRUE(check_axioms(s).all_passed());

  for (const char* bad : {R"([])", R"({"algebra": {"blocks": []}})",
                          R"({"algebra": {"blocks": [2]}, "dirac": {"random_seed": 1}})",
                          R"({"algebra": {"blocks": [2]}, "dirac": {"matrix": {"real": [[1]]}}, "real_structure": "adjoint"})",
                          R"({"algebra": {"blocks": [1]}, "representation": "defining", "dirac": {"random_seed": 1}, "real_structure": "adjoint"})",
                          R"({"algebra": {"blocks": [1]}, "dirac": {"random_seed": 1}, "real_structure": "conjugation", "epsilon": 2})",
                          R"({"algebra": {"blocks": [1]}, "dirac": {"random_seed": 1}, "real_structure": {"matrix": {"real": [[2]]}}})",
                          R"({"preset": 3})"})
    EXPECT_THROW(triple_from_config(json::parse(bad)), ParseError) << bad;
  EXPECT_THROW(load_triple_config("/nonexistent/triple.json"), ParseError);
}
