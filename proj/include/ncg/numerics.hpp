#pragma once

// Dense complex linear algebra shared by every module: operator norms,
// nullspaces, orthonormal spans under the trace inner product, and the
// closure kernel that computes generated *-algebras.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncg/errors.hpp"

namespace ncg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance ladder.
namespace tol {
inline constexpr double construction = 1e-10;
inline constexpr double membership = 1e-9;
inline constexpr double derived = 1e-8;
inline constexpr double grid = 1e-4;
/// Relative rank cut used by spans, nullspaces and closures.
inline constexpr double rank = 1e-9;
}  // namespace tol

/// Selects the serial reference path or the OpenMP path of a kernel.
enum class Exec { Serial, Parallel };

inline constexpr cplx kI{0.0, 1.0};

CMatrix adjoint(const CMatrix& m);
CMatrix identity(Index n);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// tr(a* b).
cplx trace_inner(const CMatrix& a, const CMatrix& b);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// Column-major flattening and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Index rows, Index cols);

/// Kronecker product; with column-major vec, vec(a x b) = kron(b^T, a) vec(x).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// exp(X) for skew-hermitian X, computed spectrally so the result is unitary
/// to machine precision.
CMatrix exp_skew_hermitian(const CMatrix& x);

bool is_square(const CMatrix& m);
double unitarity_residual(const CMatrix& m);
double hermiticity_residual(const CMatrix& m);

/// An anti-linear operator v -> K conj(v). Only the kernel K is stored.
class AntiLinearOp {
 public:
  /// Throws BadParameters unless K is square and unitary within 1e-10.
  explicit AntiLinearOp(CMatrix kernel);

  const CMatrix& kernel() const { return kernel_; }
  Index size() const { return kernel_.rows(); }
  CVector apply(const CVector& v) const;

  /// Residual of K conj(K) = s I for the nearer sign s, and that sign.
  std::pair<int, double> square_sign() const;

 private:
  CMatrix kernel_;
};

/// Matrix of the linear operator J m J^{-1}.
///
/// With J v = K conj(v) and K unitary, J^{-1} w = K^T conj(w), so
/// J m J^{-1} = K conj(m) K*. When K conj(K) = eps I this equals
/// eps K conj(m) conj(K).
CMatrix antilinear_conjugate(const AntiLinearOp& j, const CMatrix& m);

/// A complex subspace of rows x cols matrices, kept as an orthonormal frame
/// (columns are vec'd basis matrices, orthonormal under tr(a* b)).
class Subspace {
 public:
  Subspace() = default;
  Subspace(Index rows, Index cols);

  /// Orthonormal span of `vectors`. Directions with singular value at most
  /// rel_tol * max(sigma_max, scale_floor) are dropped; scale_floor lets callers
  /// discard families that are zero up to roundoff.
  static Subspace span(Index rows, Index cols, std::span<const CMatrix> vectors,
                       double rel_tol = tol::rank, double scale_floor = 0.0);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index dim() const { return dim_; }
  Index ambient_dim() const { return rows_ * cols_; }

  /// Orthonormal frame, (rows*cols) x dim.
  Eigen::Ref<const CMatrix> frame() const { return frame_.leftCols(dim_); }
  CMatrix basis(Index i) const;
  std::vector<CMatrix> basis() const;

  CVector coordinates(const CMatrix& m) const;
  CMatrix element(const CVector& coords) const;
  CMatrix project(const CMatrix& m) const;
  /// Frobenius norm of m minus its projection.
  double residual(const CMatrix& m) const;

  /// Gram-Schmidt extension. Adds the normalized residual of m if its norm
  /// exceeds rel_tol * scale; returns whether the dimension grew.
  bool try_add(const CMatrix& m, double scale, double rel_tol = tol::rank);

  /// Largest residual of other's basis against this subspace.
  double containment_residual(const Subspace& other) const;

 private:
  void reserve(Index capacity);

  Index rows_ = 0;
  Index cols_ = 0;
  Index dim_ = 0;
  CMatrix frame_;
};

/// A real subspace of complex matrices under Re tr(a* b).
class RealSubspace {
 public:
  RealSubspace() = default;
  RealSubspace(Index rows, Index cols);

  static RealSubspace span(Index rows, Index cols, std::span<const CMatrix> vectors,
                           double rel_tol = tol::rank, double scale_floor = 0.0);

  Index dim() const { return dim_; }
  std::vector<CMatrix> basis() const;
  CMatrix project(const CMatrix& m) const;
  double residual(const CMatrix& m) const;

 private:
  RVector realify(const CMatrix& m) const;
  CMatrix complexify(const RVector& v) const;

  Index rows_ = 0;
  Index cols_ = 0;
  Index dim_ = 0;
  RMatrix frame_;
};

/// Coefficients (columns, orthonormal) of the nullspace of the linear map whose
/// i-th column image is images[i]. A direction is null when its singular value
/// is at most rel_tol * max(||L||, scale_floor).
CMatrix null_coefficients(std::span<const CVector> images, Index domain_dim,
                          double rel_tol = tol::rank, double scale_floor = 0.0);

/// Nullspace of L given its images on an orthonormal domain basis; the result
/// lives in the domain's matrix space.
Subspace nullspace(std::span<const CMatrix> domain_basis, std::span<const CVector> images,
                   double rel_tol = tol::rank, double scale_floor = 0.0);
Subspace nullspace(std::span<const CMatrix> domain_basis, std::span<const CMatrix> images,
                   double rel_tol = tol::rank, double scale_floor = 0.0);

/// Smallest *-closed, product-closed subspace containing the generators (and
/// the identity if requested). Generators whose Frobenius norm is below 1e-14
/// times the largest one are treated as zero. Throws DimensionMismatch on
/// mixed sizes.
Subspace generated_algebra(std::span<const CMatrix> generators, bool include_unit,
                           Exec exec = Exec::Parallel);

/// Closure with a Z2 grading: words in even and odd letters, split by the
/// parity of the number of odd letters. Always contains the identity.
struct GradedClosure {
  Subspace even;
  Subspace odd;
  Subspace total;
  Index intersection_dim() const { return even.dim() + odd.dim() - total.dim(); }
};
GradedClosure graded_closure(std::span<const CMatrix> even_letters,
                             std::span<const CMatrix> odd_letters, Exec exec = Exec::Parallel);

}  // namespace ncg
