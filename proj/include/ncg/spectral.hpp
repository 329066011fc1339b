#pragma once

// Finite real spectral triples (A, H, D; J). The algebra is kept in its
// defining representation; pi is stored through the images of its basis.
// J is v -> K conj(v), and every axiom is checked in linear matrix form:
//   J^2 = eps          <=>  K conj(K) = eps I
//   JD = eps' DJ       <=>  K conj(D) = eps' D K
//   b^0 = J b* J^-1    =   K pi(b)^T K*
//   aJ = Ja*           <=>  pi(a) K = K pi(a)^T
//   U J U* = J         <=>  U K U^T = K

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncg/numerics.hpp"
#include "ncg/report.hpp"
#include "ncg/staralg.hpp"

namespace ncg {

/// Even/odd split of the algebra generated by pi(A) and [D, pi(A)].
struct CDAlgebra {
  FiniteStarAlgebra algebra;  // acting on H
  Subspace even;
  Subspace odd;
  Index intersection_dim = 0;
  bool grading_consistent() const { return intersection_dim == 0; }
};

struct RealSpectralTriple {
  FiniteStarAlgebra algebra;
  std::vector<CMatrix> pi_basis;
  CMatrix dirac;
  AntiLinearOp j{CMatrix::Identity(1, 1)};
  int epsilon = 1;
  int epsilon_prime = 1;
  std::string label;

  Index hilbert_dim() const { return dirac.rows(); }
  /// Linear extension of pi to the span of the algebra (components outside the
  /// span are discarded).
  CMatrix pi(const CMatrix& a) const;
  /// b^0 = J pi(b)* J^-1.
  CMatrix opposite(const CMatrix& b) const;
  /// [D, pi(a)].
  CMatrix d_commutator(const CMatrix& a) const;
  /// J m J^-1.
  CMatrix conjugate_by_j(const CMatrix& m) const { return antilinear_conjugate(j, m); }

  struct Cache {
    std::once_flag omega_once;
    std::once_flag cd_once;
    Subspace omega;
    std::unique_ptr<CDAlgebra> cd;
  };
  std::shared_ptr<Cache> cache = std::make_shared<Cache>();
};

/// Packages triple data; throws DimensionMismatch on inconsistent shapes and
/// BadParameters on signs outside {-1, +1} or a non-unitary K.
RealSpectralTriple make_triple(FiniteStarAlgebra algebra, std::vector<CMatrix> pi_basis,
                               CMatrix dirac, CMatrix k, int epsilon, int epsilon_prime,
                               std::string label);
RealSpectralTriple make_triple(FiniteStarAlgebra algebra,
                               const std::function<CMatrix(const CMatrix&)>& rep, CMatrix dirac,
                               CMatrix k, int epsilon, int epsilon_prime, std::string label);

/// Per-axiom residual report. Never throws on failed axioms.
CheckList check_axioms(const RealSpectralTriple& t);

/// span{pi(a)[D, pi(b)]}; cached on the triple.
const Subspace& one_form_space(const RealSpectralTriple& t);

/// Algebra generated by pi(A) and [D, pi(A)], with the parity report; cached.
const CDAlgebra& c_d_algebra(const RealSpectralTriple& t);

/// {a in A : aJ = Ja*} in the defining representation.
FiniteStarAlgebra compute_aj(const RealSpectralTriple& t);

/// Premises (J axioms, commutant) and conclusions: A_J central, *-closed,
/// commutative, commuting with one-forms.
CheckList verify_aj_properties(const RealSpectralTriple& t);

/// U pi1(a) U* = pi2(a), U D1 U* = D2, U K1 U^T = K2.
CheckList unitary_equivalent(const RealSpectralTriple& t1, const RealSpectralTriple& t2,
                             const CMatrix& u);

/// The triple transported by a unitary U on H.
RealSpectralTriple conjugate_triple(const RealSpectralTriple& t, const CMatrix& u);

/// Same H, D, J with the algebra replaced by a subalgebra of A.
RealSpectralTriple restrict_triple(const RealSpectralTriple& t, const FiniteStarAlgebra& sub);

/// Residual of pi(a) K - K pi(a)^T.
double aj_residual(const RealSpectralTriple& t, const CMatrix& a);

}  // namespace ncg
