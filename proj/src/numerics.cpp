#include "ncg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ncg/kernels.hpp"

namespace ncg {

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || b.cols() != a.rows())
    throw DimensionMismatch("commutator of " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  return a * b - b * a;
}

cplx trace_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("trace_inner: shapes differ");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvec: length does not match shape");
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix exp_skew_hermitian(const CMatrix& x) {
  if (!is_square(x)) throw DimensionMismatch("exp_skew_hermitian needs a square matrix");
  CMatrix h = -kI * x;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CVector phases =
      es.eigenvalues().unaryExpr([](double l) { return std::exp(kI * l); }).eval();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_square(const CMatrix& m) { return m.rows() == m.cols(); }

double unitarity_residual(const CMatrix& m) {
  if (!is_square(m)) throw DimensionMismatch("unitarity_residual needs a square matrix");
  return (m.adjoint() * m - identity(m.rows())).norm();
}

double hermiticity_residual(const CMatrix& m) {
  if (!is_square(m)) throw DimensionMismatch("hermiticity_residual needs a square matrix");
  return (m - m.adjoint()).norm();
}

AntiLinearOp::AntiLinearOp(CMatrix kernel) : kernel_(std::move(kernel)) {
  if (!is_square(kernel_)) throw BadParameters("anti-linear kernel must be square");
  const double r = unitarity_residual(kernel_);
  if (r > tol::construction)
    throw BadParameters("anti-linear kernel is not unitary (residual " + std::to_string(r) + ")");
}

CVector AntiLinearOp::apply(const CVector& v) const {
  if (v.size() != size()) throw DimensionMismatch("anti-linear operator applied to wrong length");
  return kernel_ * v.conjugate();
}

std::pair<int, double> AntiLinearOp::square_sign() const {
  const CMatrix sq = kernel_ * kernel_.conjugate();
  const CMatrix id = identity(size());
  const double plus = (sq - id).norm();
  const double minus = (sq + id).norm();
  return plus <= minus ? std::pair{1, plus} : std::pair{-1, minus};
}

CMatrix antilinear_conjugate(const AntiLinearOp& j, const CMatrix& m) {
  if (m.rows() != j.size() || m.cols() != j.size())
    throw DimensionMismatch("antilinear_conjugate: operator size does not match J");
  return j.kernel() * m.conjugate() * j.kernel().adjoint();
}

// Subspace

Subspace::Subspace(Index rows, Index cols) : rows_(rows), cols_(cols) {
  frame_.resize(rows * cols, 0);
}

void Subspace::reserve(Index capacity) {
  if (capacity <= frame_.cols()) return;
  CMatrix grown(ambient_dim(), capacity);
  grown.leftCols(dim_) = frame_.leftCols(dim_);
  frame_.swap(grown);
}

Subspace Subspace::span(Index rows, Index cols, std::span<const CMatrix> vectors, double rel_tol,
                        double scale_floor) {
  Subspace out(rows, cols);
  if (vectors.empty()) return out;
  CMatrix stacked(rows * cols, static_cast<Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].rows() != rows || vectors[i].cols() != cols)
      throw DimensionMismatch("Subspace::span: element " + std::to_string(i) + " has shape " +
                              std::to_string(vectors[i].rows()) + "x" +
                              std::to_string(vectors[i].cols()));
    stacked.col(static_cast<Index>(i)) = vec(vectors[i]);
  }
  // Eigen 3.4 BDCSVD returns a wrong U on inputs with many repeated singular
  // values and exact zeros, which closures produce routinely.
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, scale_floor);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  if (s.size() && s(0) == 0.0) rank = 0;
  out.frame_ = svd.matrixU().leftCols(rank);
  out.dim_ = rank;
  return out;
}

CMatrix Subspace::basis(Index i) const { return unvec(frame_.col(i), rows_, cols_); }

std::vector<CMatrix> Subspace::basis() const {
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(dim_));
  for (Index i = 0; i < dim_; ++i) out.push_back(basis(i));
  return out;
}

CVector Subspace::coordinates(const CMatrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_)
    throw DimensionMismatch("Subspace::coordinates: shape mismatch");
  return frame().adjoint() * vec(m);
}

CMatrix Subspace::element(const CVector& coords) const {
  if (coords.size() != dim_) throw DimensionMismatch("Subspace::element: wrong coordinate count");
  return unvec(frame() * coords, rows_, cols_);
}

CMatrix Subspace::project(const CMatrix& m) const { return element(coordinates(m)); }

double Subspace::residual(const CMatrix& m) const {
  const CVector v = vec(m);
  if (v.size() != ambient_dim()) throw DimensionMismatch("Subspace::residual: shape mismatch");
  if (dim_ == 0) return v.norm();
  return (v - frame() * (frame().adjoint() * v)).norm();
}

bool Subspace::try_add(const CMatrix& m, double scale, double rel_tol) {
  if (m.rows() != rows_ || m.cols() != cols_)
    throw DimensionMismatch("Subspace::try_add: shape mismatch");
  if (dim_ >= ambient_dim()) return false;
  CVector r = vec(m);
  for (int pass = 0; pass < 2 && dim_ > 0; ++pass) r -= frame() * (frame().adjoint() * r);
  const double n = r.norm();
  if (!(n > rel_tol * scale)) return false;
  if (dim_ == frame_.cols()) reserve(std::min(ambient_dim(), std::max<Index>(8, 2 * dim_)));
  frame_.col(dim_) = r / n;
  ++dim_;
  return true;
}

double Subspace::containment_residual(const Subspace& other) const {
  double worst = 0.0;
  for (Index i = 0; i < other.dim(); ++i) worst = std::max(worst, residual(other.basis(i)));
  return worst;
}

// RealSubspace

RealSubspace::RealSubspace(Index rows, Index cols) : rows_(rows), cols_(cols) {
  frame_.resize(2 * rows * cols, 0);
}

RVector RealSubspace::realify(const CMatrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_)
    throw DimensionMismatch("RealSubspace: shape mismatch");
  const CVector v = vec(m);
  RVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

CMatrix RealSubspace::complexify(const RVector& v) const {
  const Index n = rows_ * cols_;
  CVector c(n);
  c.real() = v.head(n);
  c.imag() = v.tail(n);
  return unvec(c, rows_, cols_);
}

RealSubspace RealSubspace::span(Index rows, Index cols, std::span<const CMatrix> vectors,
                                double rel_tol, double scale_floor) {
  RealSubspace out(rows, cols);
  if (vectors.empty()) return out;
  RMatrix stacked(2 * rows * cols, static_cast<Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i)
    stacked.col(static_cast<Index>(i)) = out.realify(vectors[i]);
  Eigen::JacobiSVD<RMatrix> svd(stacked, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, scale_floor);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  if (s.size() && s(0) == 0.0) rank = 0;
  out.frame_ = svd.matrixU().leftCols(rank);
  out.dim_ = rank;
  return out;
}

std::vector<CMatrix> RealSubspace::basis() const {
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(dim_));
  for (Index i = 0; i < dim_; ++i) out.push_back(complexify(frame_.col(i)));
  return out;
}

CMatrix RealSubspace::project(const CMatrix& m) const {
  const RVector v = realify(m);
  if (dim_ == 0) return CMatrix::Zero(rows_, cols_);
  return complexify(frame_ * (frame_.transpose() * v));
}

double RealSubspace::residual(const CMatrix& m) const {
  const RVector v = realify(m);
  if (dim_ == 0) return v.norm();
  return (v - frame_ * (frame_.transpose() * v)).norm();
}

// Nullspaces

CMatrix null_coefficients(std::span<const CVector> images, Index domain_dim, double rel_tol,
                          double scale_floor) {
  if (static_cast<Index>(images.size()) != domain_dim)
    throw DimensionMismatch("null_coefficients: " + std::to_string(images.size()) +
                            " images for a domain of dimension " + std::to_string(domain_dim));
  if (domain_dim == 0) return CMatrix(0, 0);
  const Index len = images.front().size();
  for (const auto& v : images)
    if (v.size() != len) throw DimensionMismatch("null_coefficients: images of unequal length");
  if (len == 0) return CMatrix::Identity(domain_dim, domain_dim);
  CMatrix l(len, domain_dim);
  for (Index i = 0; i < domain_dim; ++i) l.col(i) = images[static_cast<size_t>(i)];
  Eigen::JacobiSVD<CMatrix> svd(l, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double cut = rel_tol * std::max(s(0), scale_floor);
  Index rank = 0;
  if (s(0) > 0.0)
    while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(domain_dim - rank);
}

Subspace nullspace(std::span<const CMatrix> domain_basis, std::span<const CVector> images,
                   double rel_tol, double scale_floor) {
  if (domain_basis.empty()) throw DimensionMismatch("nullspace: empty domain basis");
  const Index rows = domain_basis.front().rows();
  const Index cols = domain_basis.front().cols();
  const CMatrix coeff =
      null_coefficients(images, static_cast<Index>(domain_basis.size()), rel_tol, scale_floor);
  std::vector<CMatrix> members;
  members.reserve(static_cast<size_t>(coeff.cols()));
  for (Index c = 0; c < coeff.cols(); ++c) {
    CMatrix m = CMatrix::Zero(rows, cols);
    for (Index i = 0; i < coeff.rows(); ++i) m += coeff(i, c) * domain_basis[static_cast<size_t>(i)];
    members.push_back(std::move(m));
  }
  return Subspace::span(rows, cols, members);
}

Subspace nullspace(std::span<const CMatrix> domain_basis, std::span<const CMatrix> images,
                   double rel_tol, double scale_floor) {
  std::vector<CVector> flat;
  flat.reserve(images.size());
  for (const auto& m : images) flat.push_back(vec(m));
  return nullspace(domain_basis, std::span<const CVector>(flat), rel_tol, scale_floor);
}

// Closures

namespace {

Index common_size(std::span<const CMatrix> a, std::span<const CMatrix> b) {
  Index n = -1;
  auto visit = [&](std::span<const CMatrix> list) {
    for (const auto& m : list) {
      if (!is_square(m)) throw DimensionMismatch("closure generators must be square");
      if (n < 0) n = m.rows();
      if (m.rows() != n)
        throw DimensionMismatch("closure generators of sizes " + std::to_string(n) + " and " +
                                std::to_string(m.rows()));
    }
  };
  visit(a);
  visit(b);
  if (n < 0) throw DimensionMismatch("closure needs at least one generator");
  return n;
}

// Nonzero letters, normalized to unit Frobenius norm, together with their
// adjoints when these are not already proportional.
std::vector<CMatrix> prepare_letters(std::span<const CMatrix> gens, double floor) {
  std::vector<CMatrix> out;
  for (const auto& g : gens) {
    const double n = g.norm();
    if (n <= floor) continue;
    out.push_back(g / n);
    if (hermiticity_residual(g) > 1e-14 * n && (g + g.adjoint()).norm() > 1e-14 * n)
      out.push_back(g.adjoint() / n);
  }
  return out;
}

double largest_norm(std::span<const CMatrix> a, std::span<const CMatrix> b) {
  double m = 0.0;
  for (const auto& g : a) m = std::max(m, g.norm());
  for (const auto& g : b) m = std::max(m, g.norm());
  return m;
}

}  // namespace

Subspace generated_algebra(std::span<const CMatrix> generators, bool include_unit, Exec exec) {
  const Index n = common_size(generators, {});
  const double floor = 1e-14 * largest_norm(generators, {});
  const std::vector<CMatrix> letters = prepare_letters(generators, floor);

  Subspace space(n, n);
  std::vector<CMatrix> frontier;
  if (include_unit && space.try_add(identity(n) / std::sqrt(double(n)), 1.0))
    frontier.push_back(space.basis(space.dim() - 1));
  for (const auto& l : letters)
    if (space.try_add(l, 1.0)) frontier.push_back(space.basis(space.dim() - 1));

  while (!frontier.empty() && space.dim() < n * n) {
    const auto products = kernels::left_products(letters, frontier, exec);
    std::vector<CMatrix> next;
    for (const auto& p : products)
      if (space.try_add(p, 1.0)) next.push_back(space.basis(space.dim() - 1));
    frontier.swap(next);
  }
  return space;
}

GradedClosure graded_closure(std::span<const CMatrix> even_letters,
                             std::span<const CMatrix> odd_letters, Exec exec) {
  const Index n = common_size(even_letters, odd_letters);
  const double floor = 1e-14 * largest_norm(even_letters, odd_letters);
  const std::vector<CMatrix> ev = prepare_letters(even_letters, floor);
  const std::vector<CMatrix> od = prepare_letters(odd_letters, floor);

  GradedClosure out{Subspace(n, n), Subspace(n, n), Subspace(n, n)};
  std::vector<CMatrix> fe, fo;
  if (out.even.try_add(identity(n) / std::sqrt(double(n)), 1.0))
    fe.push_back(out.even.basis(out.even.dim() - 1));
  for (const auto& l : ev)
    if (out.even.try_add(l, 1.0)) fe.push_back(out.even.basis(out.even.dim() - 1));
  for (const auto& l : od)
    if (out.odd.try_add(l, 1.0)) fo.push_back(out.odd.basis(out.odd.dim() - 1));

  while (!fe.empty() || !fo.empty()) {
    std::vector<CMatrix> ne, no;
    auto feed = [](Subspace& target, const std::vector<CMatrix>& prods, std::vector<CMatrix>& next) {
      for (const auto& p : prods)
        if (target.try_add(p, 1.0)) next.push_back(target.basis(target.dim() - 1));
    };
    feed(out.even, kernels::left_products(ev, fe, exec), ne);
    feed(out.odd, kernels::left_products(od, fe, exec), no);
    feed(out.odd, kernels::left_products(ev, fo, exec), no);
    feed(out.even, kernels::left_products(od, fo, exec), ne);
    fe.swap(ne);
    fo.swap(no);
  }

  std::vector<CMatrix> all = out.even.basis();
  for (auto& m : out.odd.basis()) all.push_back(std::move(m));
  out.total = Subspace::span(n, n, all);
  return out;
}

}  // namespace ncg
