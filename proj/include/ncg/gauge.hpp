#pragma once

// Gauge group and Lie algebra of a real spectral triple, the perturbation
// semigroup, inner fluctuations and gauge transformations of one-forms.
// Algebra elements (u, a_j, b_j) are always given in the defining
// representation of A.

#include <random>
#include <utility>
#include <vector>

#include "ncg/report.hpp"
#include "ncg/spectral.hpp"

namespace ncg {

/// U = pi(u) J pi(u) J^-1.
struct GaugeElement {
  CMatrix u;
  CMatrix matrix;
};

/// Throws NotUnitary unless u u* = u* u = 1 in A within 1e-9.
GaugeElement gauge_element(const RealSpectralTriple& t, const CMatrix& u);
/// U unitary and U K U^T = K.
CheckList gauge_element_checks(const RealSpectralTriple& t, const GaugeElement& g);

struct GaugeLieAlgebra {
  std::vector<CMatrix> basis;  // real-orthonormal, skew-hermitian, on H
  Index dim = 0;
  Index dim_u_a = 0;
  Index dim_u_aj = 0;
  CheckList checks;
};

/// Real span of pi(X) + J pi(X) J^-1 over skew-hermitian X in A.
GaugeLieAlgebra gauge_lie_algebra(const RealSpectralTriple& t);

struct AdKernelResult {
  bool in_kernel = false;   // U = 1
  bool in_aj = false;       // u in A_J
  double kernel_residual = 0.0;
  double aj_residual = 0.0;
  bool consistent() const { return in_kernel == in_aj; }
};
AdKernelResult ad_kernel_check(const RealSpectralTriple& t, const CMatrix& u);

/// sum_j a_j (x) b_j^op.
struct Perturbation {
  std::vector<std::pair<CMatrix, CMatrix>> terms;
};

struct PertCertificates {
  /// || sum a_j b_j - 1 ||
  double normalization = 0.0;
  /// || sum pi(a_j) x pi(b_j) - sum pi(b_j)* x pi(a_j)* || as superoperators
  double self_adjointness = 0.0;
  bool passed(double tol = tol::derived) const {
    return normalization < tol && self_adjointness < tol;
  }
};

PertCertificates certify(const RealSpectralTriple& t, const Perturbation& p);
/// Superoperator x -> sum pi(a_j) x pi(b_j) on vec(x).
CMatrix left_right_operator(const RealSpectralTriple& t, const Perturbation& p);

Perturbation identity_perturbation(const RealSpectralTriple& t);
/// {(u, u*)}; NotUnitary unless u is a unitary of A.
Perturbation from_unitary(const RealSpectralTriple& t, const CMatrix& u);
/// Terms {(a_i c_j, d_j b_i)}; MembershipViolated if a certificate fails.
Perturbation pert_product(const RealSpectralTriple& t, const Perturbation& p,
                          const Perturbation& r);
/// A random element of Pert(A) built from `pairs` symmetrized pairs.
Perturbation random_perturbation(const RealSpectralTriple& t, std::mt19937_64& rng,
                                 int pairs = 2);

struct OneForm {
  std::vector<std::pair<CMatrix, CMatrix>> terms;
  CMatrix evaluated;
  bool self_adjoint = false;
};

/// sum pi(a)[D, pi(b)].
OneForm one_form(const RealSpectralTriple& t, std::vector<std::pair<CMatrix, CMatrix>> terms);
OneForm gauge_field(const RealSpectralTriple& t, const Perturbation& p);

/// D + omega + eps' J omega J^-1.
CMatrix fluctuate(const RealSpectralTriple& t, const CMatrix& omega);
/// sum_{i,j} pi(a_i) a_j^ D pi(b_i) b_j^ with x^ = J pi(x) J^-1.
CMatrix doubled_fluctuation(const RealSpectralTriple& t, const Perturbation& p);

struct GaugeTransformed {
  OneForm background;  // u omega0 u* + u[D, u*]
  OneForm field;       // u omega u*
  double covariance_residual = 0.0;
};
/// NotUnitary unless u is a unitary of A.
GaugeTransformed gauge_transform_field(const RealSpectralTriple& t, const OneForm& omega,
                                       const OneForm& omega0, const CMatrix& u);

/// Residual of u u* = u* u = unit in A, plus membership of u in A.
double unitary_residual_in(const FiniteStarAlgebra& a, const CMatrix& u);

}  // namespace ncg
