#include "ncg/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

double unitary_residual_in(const FiniteStarAlgebra& a, const CMatrix& u) {
  return (u * u.adjoint() - a.unit).norm() + (u.adjoint() * u - a.unit).norm() + a.residual(u);
}

namespace {

void require_unitary(const RealSpectralTriple& t, const CMatrix& u) {
  if (u.rows() != t.algebra.size() || u.cols() != t.algebra.size())
    throw DimensionMismatch("algebra element has the wrong size");
  const double r = unitary_residual_in(t.algebra, u);
  if (r > tol::membership)
    throw NotUnitary("element is not a unitary of " + t.algebra.label + " (residual " +
                     std::to_string(r) + ")");
}

}  // namespace

GaugeElement gauge_element(const RealSpectralTriple& t, const CMatrix& u) {
  require_unitary(t, u);
  const CMatrix pu = t.pi(u);
  return GaugeElement{u, pu * t.conjugate_by_j(pu)};
}

CheckList gauge_element_checks(const RealSpectralTriple& t, const GaugeElement& g) {
  CheckList out;
  out.add("gauge_unitary", "U* U = 1", unitarity_residual(g.matrix), tol::membership);
  out.add("gauge_commutes_with_j", "U J U* = J, i.e. U K U^T = K",
          (g.matrix * t.j.kernel() * g.matrix.transpose() - t.j.kernel()).norm(), tol::derived);
  return out;
}

GaugeLieAlgebra gauge_lie_algebra(const RealSpectralTriple& t) {
  GaugeLieAlgebra g;
  const Index n = t.hilbert_dim();
  const auto xs = skew_hermitian_basis(t.algebra);
  g.dim_u_a = static_cast<Index>(xs.size());
  g.dim_u_aj = static_cast<Index>(skew_hermitian_basis(compute_aj(t)).size());

  auto lift = [&](const CMatrix& x) {
    const CMatrix px = t.pi(x);
    return CMatrix(px + t.conjugate_by_j(px));
  };
  std::vector<CMatrix> images;
  for (const auto& x : xs) images.push_back(lift(x));
  const RealSubspace span = RealSubspace::span(n, n, images, tol::rank, 1.0);
  g.basis = span.basis();
  g.dim = span.dim();

  g.checks.add_count("dimension", "dim g = dim u(A) - dim u(A_J)", g.dim_u_a - g.dim_u_aj, g.dim,
                     Scope::FiniteShadow);
  double skew = 0.0;
  for (const auto& b : g.basis) skew = std::max(skew, (b + b.adjoint()).norm());
  g.checks.add("skew_hermitian", "T* = -T", skew, tol::membership);

  double closure = 0.0, bracket = 0.0;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t l = i + 1; l < xs.size(); ++l) {
      const CMatrix tb = images[i] * images[l] - images[l] * images[i];
      closure = std::max(closure, span.residual(tb));
      bracket = std::max(bracket, (tb - lift(xs[i] * xs[l] - xs[l] * xs[i])).norm());
    }
  g.checks.add("bracket_closure", "[T, T'] lies in g", closure, tol::derived);
  g.checks.add("bracket_identity", "[T, T'] = [X, X'] + J [X, X'] J^-1", bracket, tol::derived);
  return g;
}

AdKernelResult ad_kernel_check(const RealSpectralTriple& t, const CMatrix& u) {
  const GaugeElement g = gauge_element(t, u);
  const FiniteStarAlgebra aj = compute_aj(t);
  AdKernelResult r;
  r.kernel_residual = (g.matrix - identity(t.hilbert_dim())).norm();
  r.aj_residual = aj.residual(u);
  r.in_kernel = r.kernel_residual < tol::derived;
  r.in_aj = r.aj_residual < tol::derived;
  return r;
}

CMatrix left_right_operator(const RealSpectralTriple& t, const Perturbation& p) {
  const Index n = t.hilbert_dim();
  CMatrix op = CMatrix::Zero(n * n, n * n);
  for (const auto& [a, b] : p.terms) op += kron(t.pi(b).transpose(), t.pi(a));
  return op;
}

PertCertificates certify(const RealSpectralTriple& t, const Perturbation& p) {
  const Index n = t.hilbert_dim();
  const Index m = t.algebra.size();
  CMatrix sum = CMatrix::Zero(m, m);
  CMatrix lhs = CMatrix::Zero(n * n, n * n);
  CMatrix rhs = CMatrix::Zero(n * n, n * n);
  for (const auto& [a, b] : p.terms) {
    sum += a * b;
    const CMatrix pa = t.pi(a), pb = t.pi(b);
    lhs += kron(pb.transpose(), pa);
    rhs += kron(pa.conjugate(), pb.adjoint());
  }
  return PertCertificates{(sum - t.algebra.unit).norm(), (lhs - rhs).norm()};
}

Perturbation identity_perturbation(const RealSpectralTriple& t) {
  return Perturbation{{{t.algebra.unit, t.algebra.unit}}};
}

Perturbation from_unitary(const RealSpectralTriple& t, const CMatrix& u) {
  require_unitary(t, u);
  return Perturbation{{{u, u.adjoint()}}};
}

Perturbation pert_product(const RealSpectralTriple& t, const Perturbation& p,
                          const Perturbation& r) {
  Perturbation out;
  out.terms.reserve(p.terms.size() * r.terms.size());
  for (const auto& [a, b] : p.terms)
    for (const auto& [c, d] : r.terms) out.terms.emplace_back(a * c, d * b);
  const PertCertificates cert = certify(t, out);
  if (!cert.passed())
    throw MembershipViolated("product left Pert(A): normalization " +
                             std::to_string(cert.normalization) + ", self-adjointness " +
                             std::to_string(cert.self_adjointness));
  return out;
}

Perturbation random_perturbation(const RealSpectralTriple& t, std::mt19937_64& rng, int pairs) {
  Perturbation p;
  const CMatrix& one = t.algebra.unit;
  CMatrix h = CMatrix::Zero(one.rows(), one.cols());
  for (int k = 0; k < pairs; ++k) {
    const CMatrix a = 0.3 * random_element(t.algebra, rng);
    const CMatrix b = 0.3 * random_element(t.algebra, rng);
    p.terms.emplace_back(a, b);
    p.terms.emplace_back(b.adjoint(), a.adjoint());
    h += a * b + b.adjoint() * a.adjoint();
  }
  const CMatrix half = 0.5 * (one - h);
  p.terms.emplace_back(half, one);
  p.terms.emplace_back(one, half);
  return p;
}

OneForm one_form(const RealSpectralTriple& t, std::vector<std::pair<CMatrix, CMatrix>> terms) {
  OneForm w;
  w.evaluated = CMatrix::Zero(t.hilbert_dim(), t.hilbert_dim());
  for (const auto& [a, b] : terms) w.evaluated += t.pi(a) * t.d_commutator(b);
  w.terms = std::move(terms);
  w.self_adjoint = hermiticity_residual(w.evaluated) < tol::derived;
  return w;
}

OneForm gauge_field(const RealSpectralTriple& t, const Perturbation& p) {
  return one_form(t, p.terms);
}

CMatrix fluctuate(const RealSpectralTriple& t, const CMatrix& omega) {
  return t.dirac + omega + double(t.epsilon_prime) * t.conjugate_by_j(omega);
}

CMatrix doubled_fluctuation(const RealSpectralTriple& t, const Perturbation& p) {
  const Index n = t.hilbert_dim();
  std::vector<CMatrix> pa, pb, ha, hb;
  for (const auto& [a, b] : p.terms) {
    pa.push_back(t.pi(a));
    pb.push_back(t.pi(b));
    ha.push_back(t.conjugate_by_j(pa.back()));
    hb.push_back(t.conjugate_by_j(pb.back()));
  }
  CMatrix out = CMatrix::Zero(n, n);
  for (size_t i = 0; i < pa.size(); ++i)
    for (size_t l = 0; l < pa.size(); ++l) out += pa[i] * ha[l] * t.dirac * pb[i] * hb[l];
  return out;
}

GaugeTransformed gauge_transform_field(const RealSpectralTriple& t, const OneForm& omega,
                                       const OneForm& omega0, const CMatrix& u) {
  require_unitary(t, u);
  const CMatrix ud = u.adjoint();
  // u a [D, b] u* = u a [D, b u*] - u a b [D, u*]
  auto conjugated = [&](const OneForm& w) {
    std::vector<std::pair<CMatrix, CMatrix>> terms;
    for (const auto& [a, b] : w.terms) {
      terms.emplace_back(u * a, b * ud);
      terms.emplace_back(-(u * a * b), ud);
    }
    return terms;
  };
  auto bg = conjugated(omega0);
  bg.emplace_back(u, ud);
  GaugeTransformed out;
  out.background = one_form(t, std::move(bg));
  out.field = one_form(t, conjugated(omega));

  const CMatrix big_u = gauge_element(t, u).matrix;
  const CMatrix before = fluctuate(t, omega0.evaluated + omega.evaluated);
  const CMatrix after = fluctuate(t, out.background.evaluated + out.field.evaluated);
  out.covariance_residual = (after - big_u * before * big_u.adjoint()).norm();
  return out;
}

}  // namespace ncg
