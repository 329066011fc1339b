#include "ncg/staralg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ncg {

double FiniteStarAlgebra::closure_residual() const {
  const auto b = basis();
  double worst = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, space.residual(b[i].adjoint()));
    for (size_t j = 0; j < b.size(); ++j) worst = std::max(worst, space.residual(b[i] * b[j]));
  }
  return worst;
}

namespace {

CMatrix unit_matrix(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

FiniteStarAlgebra from_orthonormal(Index n, std::vector<CMatrix> basis, CMatrix unit,
                                   std::string label) {
  FiniteStarAlgebra a{Subspace::span(n, n, basis), std::move(unit), std::move(label)};
  return a;
}

}  // namespace

FiniteStarAlgebra full_matrix_algebra(Index n) {
  std::vector<CMatrix> b;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) b.push_back(unit_matrix(n, i, j));
  return from_orthonormal(n, std::move(b), identity(n), "M_" + std::to_string(n));
}

FiniteStarAlgebra diagonal_algebra(Index n) {
  std::vector<CMatrix> b;
  for (Index i = 0; i < n; ++i) b.push_back(unit_matrix(n, i, i));
  return from_orthonormal(n, std::move(b), identity(n), "C^" + std::to_string(n));
}

FiniteStarAlgebra scalar_algebra(Index n) {
  std::vector<CMatrix> b{identity(n)};
  return from_orthonormal(n, std::move(b), identity(n), "C");
}

FiniteStarAlgebra block_diagonal_algebra(const std::vector<Index>& block_sizes) {
  const Index n = std::accumulate(block_sizes.begin(), block_sizes.end(), Index{0});
  if (n == 0) throw BadParameters("block_diagonal_algebra needs a positive total size");
  std::vector<CMatrix> b;
  std::string label;
  Index off = 0;
  for (Index s : block_sizes) {
    if (s <= 0) throw BadParameters("block sizes must be positive");
    for (Index j = 0; j < s; ++j)
      for (Index i = 0; i < s; ++i) b.push_back(unit_matrix(n, off + i, off + j));
    off += s;
    label += (label.empty() ? "" : "+") + ("M_" + std::to_string(s));
  }
  return from_orthonormal(n, std::move(b), identity(n), label);
}

FiniteStarAlgebra subalgebra_from_span(std::span<const CMatrix> vectors, Index n,
                                       std::string label) {
  Subspace s = Subspace::span(n, n, vectors);
  if (s.dim() == 0) throw NoUnit("the zero subspace has no unit");
  const auto b = s.basis();
  const double thr = tol::derived;
  for (size_t i = 0; i < b.size(); ++i) {
    const double r = s.residual(b[i].adjoint());
    if (r >= thr)
      throw NotClosed("adjoint of basis element " + std::to_string(i) + " leaves the span (residual " +
                      std::to_string(r) + ")");
  }
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      const double r = s.residual(b[i] * b[j]);
      if (r >= thr)
        throw NotClosed("product of basis elements " + std::to_string(i) + " and " +
                        std::to_string(j) + " leaves the span (residual " + std::to_string(r) + ")");
    }

  // Unit: coordinates c with (sum c_k b_k) b_i = b_i = b_i (sum c_k b_k) for all i.
  const Index d = s.dim();
  const Index blk = n * n;
  CMatrix sys(2 * d * blk, d);
  CVector rhs(2 * d * blk);
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) {
      sys.block(2 * i * blk, k, blk, 1) = vec(b[k] * b[i]);
      sys.block((2 * i + 1) * blk, k, blk, 1) = vec(b[i] * b[k]);
    }
    rhs.segment(2 * i * blk, blk) = vec(b[i]);
    rhs.segment((2 * i + 1) * blk, blk) = vec(b[i]);
  }
  const CVector c = sys.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  const double res = (sys * c - rhs).norm();
  if (res > tol::membership)
    throw NoUnit("span of dimension " + std::to_string(d) + " has no unit (residual " +
                 std::to_string(res) + ")");
  CMatrix unit = s.element(c);
  unit = (0.5 * (unit + unit.adjoint())).eval();
  return FiniteStarAlgebra{std::move(s), std::move(unit), std::move(label)};
}

FiniteStarAlgebra center(const FiniteStarAlgebra& a) {
  const auto b = a.basis();
  const Index n = a.size();
  std::vector<CVector> images;
  images.reserve(b.size());
  for (const auto& x : b) {
    CVector img(static_cast<Index>(b.size()) * n * n);
    for (size_t i = 0; i < b.size(); ++i)
      img.segment(static_cast<Index>(i) * n * n, n * n) = vec(x * b[i] - b[i] * x);
    images.push_back(std::move(img));
  }
  const Subspace z = nullspace(b, std::span<const CVector>(images), tol::rank, 1.0);
  const auto zb = z.basis();
  return subalgebra_from_span(zb, n, "Z(" + a.label + ")");
}

double commutativity_residual(const FiniteStarAlgebra& a) {
  const auto b = a.basis();
  double worst = 0.0;
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j) worst = std::max(worst, (b[i] * b[j] - b[j] * b[i]).norm());
  return worst;
}

namespace {

std::vector<CMatrix> hermitian_basis(const FiniteStarAlgebra& a) {
  std::vector<CMatrix> cands;
  for (const auto& b : a.basis()) {
    cands.push_back(0.5 * (b + b.adjoint()));
    cands.push_back((-0.5 * kI) * (b - b.adjoint()));
  }
  return RealSubspace::span(a.size(), a.size(), cands, tol::rank, 1.0).basis();
}

Index first_support(const CMatrix& p) {
  for (Index i = 0; i < p.rows(); ++i)
    if (std::abs(p(i, i)) > 1e-6) return i;
  return p.rows();
}

}  // namespace

ProjectionFamily minimal_projections(const FiniteStarAlgebra& c, std::uint64_t seed) {
  const double comm = commutativity_residual(c);
  if (comm > tol::derived)
    throw NonCommutative("commutator residual " + std::to_string(comm) + " in " + c.label);
  ProjectionFamily out;
  if (c.dim() == 0) return out;

  const Index n = c.size();
  const auto herm = hermitian_basis(c);
  const CMatrix complement = identity(n) - c.unit;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  for (int attempt = 0; attempt < 10; ++attempt) {
    CMatrix h = CMatrix::Zero(n, n);
    for (const auto& e : herm) h += gauss(rng) * e;
    h = (0.5 * (h + h.adjoint())).eval();
    const double hn = op_norm(h);
    const double shift = 2.0 * hn + 1.0;
    const CMatrix shifted = h + shift * complement;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(shifted);
    const RVector& ev = es.eigenvalues();

    // Group sorted eigenvalues into clusters, ignoring the shifted complement.
    std::vector<std::pair<Index, Index>> clusters;
    const double same = 1e-9 * std::max(1.0, hn);
    for (Index i = 0; i < n; ++i) {
      if (ev(i) > hn + 0.5) break;
      if (!clusters.empty() && ev(i) - ev(clusters.back().second - 1) <= same)
        clusters.back().second = i + 1;
      else
        clusters.emplace_back(i, i + 1);
    }
    bool separated = true;
    for (size_t k = 1; k < clusters.size(); ++k)
      if (ev(clusters[k].first) - ev(clusters[k - 1].second - 1) < 1e-6) separated = false;
    if (!separated || static_cast<Index>(clusters.size()) != c.dim()) continue;

    std::vector<CMatrix> ps;
    bool ok = true;
    for (const auto& [lo, hi] : clusters) {
      const auto v = es.eigenvectors().middleCols(lo, hi - lo);
      CMatrix p = v * v.adjoint();
      if (c.residual(p) > tol::derived) {
        ok = false;
        break;
      }
      ps.push_back(std::move(p));
    }
    if (!ok) continue;
    std::stable_sort(ps.begin(), ps.end(), [](const CMatrix& a, const CMatrix& b) {
      return first_support(a) < first_support(b);
    });
    for (size_t k = 0; k < ps.size(); ++k) {
      out.projections.push_back(std::move(ps[k]));
      out.labels.push_back("x" + std::to_string(k));
    }
    return out;
  }
  throw DegenerateDraw("no generic element separated the spectrum of " + c.label +
                       " after 10 draws");
}

std::vector<CMatrix> skew_hermitian_basis(const FiniteStarAlgebra& a) {
  std::vector<CMatrix> cands;
  for (const auto& b : a.basis()) {
    cands.push_back(0.5 * (b - b.adjoint()));
    cands.push_back((0.5 * kI) * (b + b.adjoint()));
  }
  return RealSubspace::span(a.size(), a.size(), cands, tol::rank, 1.0).basis();
}

CMatrix random_unitary(const FiniteStarAlgebra& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CMatrix x = CMatrix::Zero(a.size(), a.size());
  for (const auto& e : skew_hermitian_basis(a)) x += gauss(rng) * e;
  return a.unit * exp_skew_hermitian(x);
}

CMatrix random_element(const FiniteStarAlgebra& a, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CVector c(a.dim());
  for (Index i = 0; i < a.dim(); ++i) c(i) = cplx(gauss(rng), gauss(rng));
  return a.space.element(c);
}

CMatrix random_self_adjoint(const FiniteStarAlgebra& a, std::mt19937_64& rng) {
  const CMatrix m = random_element(a, rng);
  return 0.5 * (m + m.adjoint());
}

}  // namespace ncg
