#include "ncg/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

CMatrix RealSpectralTriple::pi(const CMatrix& a) const {
  const CVector c = algebra.space.coordinates(a);
  CMatrix out = CMatrix::Zero(hilbert_dim(), hilbert_dim());
  for (Index i = 0; i < c.size(); ++i) out += c(i) * pi_basis[static_cast<size_t>(i)];
  return out;
}

CMatrix RealSpectralTriple::opposite(const CMatrix& b) const {
  return j.kernel() * pi(b).transpose() * j.kernel().adjoint();
}

CMatrix RealSpectralTriple::d_commutator(const CMatrix& a) const {
  const CMatrix p = pi(a);
  return dirac * p - p * dirac;
}

RealSpectralTriple make_triple(FiniteStarAlgebra algebra, std::vector<CMatrix> pi_basis,
                               CMatrix dirac, CMatrix k, int epsilon, int epsilon_prime,
                               std::string label) {
  if (static_cast<Index>(pi_basis.size()) != algebra.dim())
    throw DimensionMismatch("representation given on " + std::to_string(pi_basis.size()) +
                            " basis elements, algebra has dimension " +
                            std::to_string(algebra.dim()));
  if (!is_square(dirac)) throw DimensionMismatch("Dirac operator must be square");
  const Index n = dirac.rows();
  for (const auto& p : pi_basis)
    if (p.rows() != n || p.cols() != n)
      throw DimensionMismatch("representation matrices must match the Dirac operator size");
  if (k.rows() != n || k.cols() != n) throw DimensionMismatch("K must match the Dirac operator size");
  if ((epsilon != 1 && epsilon != -1) || (epsilon_prime != 1 && epsilon_prime != -1))
    throw BadParameters("signs must be +1 or -1");
  RealSpectralTriple t;
  t.algebra = std::move(algebra);
  t.pi_basis = std::move(pi_basis);
  t.dirac = std::move(dirac);
  t.j = AntiLinearOp(std::move(k));
  t.epsilon = epsilon;
  t.epsilon_prime = epsilon_prime;
  t.label = std::move(label);
  return t;
}

RealSpectralTriple make_triple(FiniteStarAlgebra algebra,
                               const std::function<CMatrix(const CMatrix&)>& rep, CMatrix dirac,
                               CMatrix k, int epsilon, int epsilon_prime, std::string label) {
  std::vector<CMatrix> images;
  for (const auto& b : algebra.basis()) images.push_back(rep(b));
  return make_triple(std::move(algebra), std::move(images), std::move(dirac), std::move(k), epsilon,
                     epsilon_prime, std::move(label));
}

CheckList check_axioms(const RealSpectralTriple& t) {
  CheckList out;
  const auto b = t.algebra.basis();
  const Index n = t.hilbert_dim();
  const CMatrix& k = t.j.kernel();

  double mult = 0.0, star = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    star = std::max(star, (t.pi(b[i].adjoint()) - t.pi_basis[i].adjoint()).norm());
    for (size_t l = 0; l < b.size(); ++l)
      mult = std::max(mult, (t.pi(b[i] * b[l]) - t.pi_basis[i] * t.pi_basis[l]).norm());
  }
  out.add("pi_multiplicative", "pi(ab) = pi(a) pi(b)", mult, tol::membership);
  out.add("pi_star", "pi(a*) = pi(a)*", star, tol::membership);
  out.add("pi_unital", "pi(1) = 1", (t.pi(t.algebra.unit) - identity(n)).norm(), tol::membership);

  Index rank = 0;
  if (!b.empty()) {
    CMatrix stacked(n * n, static_cast<Index>(b.size()));
    for (size_t i = 0; i < b.size(); ++i) stacked.col(static_cast<Index>(i)) = vec(t.pi_basis[i]);
    Eigen::JacobiSVD<CMatrix> svd(stacked);
    const RVector s = svd.singularValues();
    while (rank < s.size() && s(rank) > tol::rank * std::max(1.0, s(0))) ++rank;
  }
  out.add_count("pi_injective", "rank of pi on a basis of A equals dim A", t.algebra.dim(), rank);

  out.add("dirac_self_adjoint", "D = D*", hermiticity_residual(t.dirac), tol::construction);
  out.add("j_isometry", "K unitary", unitarity_residual(k), tol::construction);
  out.add("j_square", "J^2 = eps, i.e. K conj(K) = eps I",
          (k * k.conjugate() - double(t.epsilon) * identity(n)).norm(), tol::membership);
  out.add("j_dirac", "JD = eps' DJ, i.e. K conj(D) = eps' D K",
          (k * t.dirac.conjugate() - double(t.epsilon_prime) * t.dirac * k).norm(), tol::membership);

  std::vector<CMatrix> opp, comm;
  for (const auto& x : b) {
    opp.push_back(t.opposite(x));
    comm.push_back(t.d_commutator(x));
  }
  double commutant = 0.0, order_one = 0.0;
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t l = 0; l < b.size(); ++l) {
      commutant = std::max(commutant, (t.pi_basis[i] * opp[l] - opp[l] * t.pi_basis[i]).norm());
      order_one = std::max(order_one, (comm[i] * opp[l] - opp[l] * comm[i]).norm());
    }
  out.add("commutant", "[a, b^0] = 0 with b^0 = J b* J^-1", commutant, tol::derived);
  out.add("order_one", "[[D, a], b^0] = 0", order_one, tol::derived);
  return out;
}

namespace {

double pi_scale(const RealSpectralTriple& t) {
  double s = 0.0;
  for (const auto& p : t.pi_basis) s = std::max(s, p.norm());
  return s;
}

}  // namespace

const Subspace& one_form_space(const RealSpectralTriple& t) {
  std::call_once(t.cache->omega_once, [&] {
    const Index n = t.hilbert_dim();
    std::vector<CMatrix> comm;
    for (const auto& p : t.pi_basis) comm.push_back(t.dirac * p - p * t.dirac);
    std::vector<CMatrix> forms;
    forms.reserve(comm.size() * t.pi_basis.size());
    for (const auto& p : t.pi_basis)
      for (const auto& c : comm) forms.push_back(p * c);
    const double s = pi_scale(t);
    t.cache->omega = Subspace::span(n, n, forms, tol::rank, t.dirac.norm() * s * s);
  });
  return t.cache->omega;
}

const CDAlgebra& c_d_algebra(const RealSpectralTriple& t) {
  std::call_once(t.cache->cd_once, [&] {
    const Index n = t.hilbert_dim();
    std::vector<CMatrix> odd;
    for (const auto& p : t.pi_basis) odd.push_back(t.dirac * p - p * t.dirac);
    // Commutators at roundoff level are not letters.
    const double floor = 1e-12 * std::max(1.0, t.dirac.norm()) * pi_scale(t);
    std::erase_if(odd, [&](const CMatrix& m) { return m.norm() <= floor; });
    GradedClosure g = graded_closure(t.pi_basis, odd);
    auto cd = std::make_unique<CDAlgebra>();
    const auto total = g.total.basis();
    cd->algebra = subalgebra_from_span(total, n, "C_D(" + t.algebra.label + ")");
    cd->intersection_dim = g.intersection_dim();
    cd->even = std::move(g.even);
    cd->odd = std::move(g.odd);
    t.cache->cd = std::move(cd);
  });
  return *t.cache->cd;
}

double aj_residual(const RealSpectralTriple& t, const CMatrix& a) {
  const CMatrix p = t.pi(a);
  return (p * t.j.kernel() - t.j.kernel() * p.transpose()).norm();
}

FiniteStarAlgebra compute_aj(const RealSpectralTriple& t) {
  const auto b = t.algebra.basis();
  const CMatrix& k = t.j.kernel();
  std::vector<CMatrix> images;
  for (const auto& p : t.pi_basis) images.push_back(p * k - k * p.transpose());
  const Subspace null = nullspace(b, std::span<const CMatrix>(images), tol::rank, pi_scale(t));
  const auto nb = null.basis();
  return subalgebra_from_span(nb, t.algebra.size(), t.algebra.label + "_J");
}

CheckList verify_aj_properties(const RealSpectralTriple& t) {
  CheckList out;
  const CMatrix& k = t.j.kernel();
  const Index n = t.hilbert_dim();
  out.add("premise.j_square", "K conj(K) = eps I", (k * k.conjugate() - double(t.epsilon) * identity(n)).norm(),
          tol::membership);
  out.add("premise.j_dirac", "K conj(D) = eps' D K",
          (k * t.dirac.conjugate() - double(t.epsilon_prime) * t.dirac * k).norm(), tol::membership);
  double commutant = 0.0;
  for (const auto& a : t.algebra.basis())
    for (const auto& b : t.algebra.basis()) {
      const CMatrix pa = t.pi(a), ob = t.opposite(b);
      commutant = std::max(commutant, (pa * ob - ob * pa).norm());
    }
  out.add("premise.commutant", "[a, b^0] = 0", commutant, tol::derived);

  FiniteStarAlgebra aj;
  try {
    aj = compute_aj(t);
  } catch (const Error& e) {
    out.add_flag("aj_is_algebra", "A_J is a unital *-subalgebra", false, Scope::FiniteShadow, e.what());
    return out;
  }
  out.add_flag("aj_is_algebra", "A_J is a unital *-subalgebra", true);

  double defining = 0.0;
  for (const auto& a : aj.basis()) defining = std::max(defining, aj_residual(t, a));
  out.add("aj_condition", "aJ = Ja* on a basis of A_J", defining, tol::derived);

  const FiniteStarAlgebra z = center(t.algebra);
  out.add("aj_in_center", "A_J is contained in Z(A)", z.space.containment_residual(aj.space),
          tol::derived);
  double star = 0.0;
  for (const auto& a : aj.basis()) star = std::max(star, aj.residual(a.adjoint()));
  out.add("aj_involutive", "A_J is closed under a -> a*", star, tol::derived);
  out.add("aj_commutative", "A_J is commutative", commutativity_residual(aj), tol::derived);

  const Subspace& omega = one_form_space(t);
  double with_forms = 0.0;
  for (const auto& a : aj.basis()) {
    const CMatrix pa = t.pi(a);
    for (Index i = 0; i < omega.dim(); ++i) {
      const CMatrix w = omega.basis(i);
      with_forms = std::max(with_forms, (pa * w - w * pa).norm());
    }
  }
  out.add("aj_commutes_with_forms", "[a, omega] = 0 for a in A_J and omega in Omega^1_D",
          with_forms, tol::derived);
  return out;
}

CheckList unitary_equivalent(const RealSpectralTriple& t1, const RealSpectralTriple& t2,
                             const CMatrix& u) {
  const Index n = t1.hilbert_dim();
  if (t2.hilbert_dim() != n || u.rows() != n || u.cols() != n)
    throw DimensionMismatch("unitary equivalence needs equal Hilbert dimensions");
  if (t1.algebra.size() != t2.algebra.size() || t1.algebra.dim() != t2.algebra.dim())
    throw DimensionMismatch("unitary equivalence needs the same algebra");
  CheckList out;
  out.add("unitary", "U* U = 1", unitarity_residual(u), tol::derived);
  double rep = 0.0;
  for (const auto& a : t1.algebra.basis())
    rep = std::max(rep, (u * t1.pi(a) * u.adjoint() - t2.pi(a)).norm());
  out.add("intertwines_pi", "U pi1(a) U* = pi2(a)", rep, tol::derived);
  out.add("intertwines_dirac", "U D1 U* = D2", (u * t1.dirac * u.adjoint() - t2.dirac).norm(),
          tol::derived);
  out.add("intertwines_j", "U J1 U* = J2, i.e. U K1 U^T = K2",
          (u * t1.j.kernel() * u.transpose() - t2.j.kernel()).norm(), tol::derived);
  return out;
}

RealSpectralTriple conjugate_triple(const RealSpectralTriple& t, const CMatrix& u) {
  std::vector<CMatrix> images;
  for (const auto& p : t.pi_basis) images.push_back(u * p * u.adjoint());
  return make_triple(t.algebra, std::move(images), u * t.dirac * u.adjoint(),
                     u * t.j.kernel() * u.transpose(), t.epsilon, t.epsilon_prime,
                     t.label + "^U");
}

RealSpectralTriple restrict_triple(const RealSpectralTriple& t, const FiniteStarAlgebra& sub) {
  std::vector<CMatrix> images;
  for (const auto& b : sub.basis()) images.push_back(t.pi(b));
  return make_triple(sub, std::move(images), t.dirac, t.j.kernel(), t.epsilon, t.epsilon_prime,
                     t.label + "|" + sub.label);
}

}  // namespace ncg
