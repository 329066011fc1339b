#include "ncg/localize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncg/gauge.hpp"

namespace ncg {

FiberDecomposition localize(const RealSpectralTriple& t, std::uint64_t seed) {
  FiberDecomposition dec;
  dec.aj = compute_aj(t);
  dec.base = minimal_projections(dec.aj, seed);
  const Index m = t.algebra.size();
  const auto basis = t.algebra.basis();

  for (size_t x = 0; x < dec.base.size(); ++x) {
    const CMatrix& p = dec.base.projections[x];
    std::vector<CMatrix> gens;
    for (const auto& b : basis) gens.push_back(p * b);
    FiniteStarAlgebra f = subalgebra_from_span(gens, m, t.algebra.label + "@" + dec.base.labels[x]);
    f.unit = p;
    dec.fibers.push_back(std::move(f));
  }

  CheckList& c = dec.checks;
  CMatrix sum = CMatrix::Zero(m, m);
  double idem = 0.0, orth = 0.0, central = 0.0;
  for (size_t x = 0; x < dec.base.size(); ++x) {
    const CMatrix& p = dec.base.projections[x];
    sum += p;
    idem = std::max({idem, (p * p - p).norm(), hermiticity_residual(p)});
    for (size_t y = x + 1; y < dec.base.size(); ++y)
      orth = std::max(orth, (p * dec.base.projections[y]).norm());
    for (const auto& b : basis) central = std::max(central, (p * b - b * p).norm());
  }
  c.add("projections_partition_unity", "sum_x p_x = 1", (sum - t.algebra.unit).norm(),
        tol::membership, Scope::Exact);
  c.add("projections_idempotent", "p_x^2 = p_x = p_x*", idem, tol::membership, Scope::Exact);
  c.add("projections_orthogonal", "p_x p_y = 0 for x != y", orth, tol::membership, Scope::Exact);
  c.add("projections_central", "p_x lies in Z(A)", central, tol::derived, Scope::Exact);

  Index total = 0;
  for (const auto& f : dec.fibers) total += f.dim();
  c.add_count("fiber_dimensions", "sum_x dim(p_x A) = dim A", t.algebra.dim(), total);

  // Injectivity of a -> (p_x a)_x: the stacked images of a basis have full rank.
  Index rank = 0;
  if (!basis.empty() && !dec.base.projections.empty()) {
    const Index blk = m * m;
    CMatrix stacked(blk * static_cast<Index>(dec.base.size()), static_cast<Index>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t x = 0; x < dec.base.size(); ++x)
        stacked.block(static_cast<Index>(x) * blk, static_cast<Index>(i), blk, 1) =
            vec(dec.base.projections[x] * basis[i]);
    const RVector s = Eigen::JacobiSVD<CMatrix>(stacked).singularValues();
    while (rank < s.size() && s(rank) > tol::rank * std::max(1.0, s(0))) ++rank;
  }
  c.add_count("section_injective", "a -> (p_x a)_x is injective", t.algebra.dim(), rank);

  double mult = 0.0;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 10; ++k) {
    const CMatrix a = random_element(t.algebra, rng);
    const CMatrix b = random_element(t.algebra, rng);
    mult = std::max(mult, section_multiplicativity(dec, a, b));
  }
  c.add("section_multiplicative", "p_x(ab) = (p_x a)(p_x b) and p_x a* = (p_x a)*", mult,
        tol::derived, Scope::Exact);
  return dec;
}

double section_multiplicativity(const FiberDecomposition& dec, const CMatrix& a, const CMatrix& b) {
  double worst = 0.0;
  for (const auto& p : dec.base.projections) {
    const double scale = std::max(1.0, a.norm() * b.norm());
    worst = std::max(worst, (p * (a * b) - (p * a) * (p * b)).norm() / scale);
    worst = std::max(worst, (p * a.adjoint() - (p * a).adjoint()).norm() / std::max(1.0, a.norm()));
  }
  return worst;
}

NormComparison norm_is_sup(const RealSpectralTriple& t, const FiberDecomposition& dec,
                           const CMatrix& a) {
  NormComparison r;
  r.global = op_norm(t.pi(a));
  for (const auto& p : dec.base.projections) r.fiber_sup = std::max(r.fiber_sup, op_norm(p * a));
  return r;
}

double fiber_gauge_action(const FiberDecomposition& dec, const CMatrix& u, const CMatrix& a) {
  double worst = 0.0;
  const CMatrix global = u * a * u.adjoint();
  for (const auto& p : dec.base.projections) {
    const CMatrix ux = p * u;
    worst = std::max(worst, (p * global - ux * (p * a) * ux.adjoint()).norm());
  }
  return worst;
}

double omega_gauge_residual(const RealSpectralTriple& t, const FiberDecomposition& dec,
                            const CMatrix& u, const CMatrix& omega) {
  double worst = 0.0;
  const CMatrix pu = t.pi(u);
  const CMatrix global = pu * omega * pu.adjoint();
  for (const auto& p : dec.base.projections) {
    const CMatrix px = t.pi(p);
    const CMatrix ux = t.pi(p * u);
    worst = std::max(worst, (px * global - ux * (px * omega) * ux.adjoint()).norm());
  }
  return worst;
}

OmegaBundle omega_bundle(const RealSpectralTriple& t, const FiberDecomposition& dec,
                         std::uint64_t seed, int samples) {
  OmegaBundle out;
  const CDAlgebra& cd = c_d_algebra(t);
  const Subspace& forms = one_form_space(t);
  const Index n = t.hilbert_dim();
  out.cd_dim = cd.algebra.dim();
  const auto cdb = cd.algebra.basis();
  const auto evb = cd.even.basis();
  const auto odb = cd.odd.basis();

  Index total = 0;
  double worst_central = 0.0, worst_forms = 0.0;
  for (size_t x = 0; x < dec.base.size(); ++x) {
    const CMatrix px = t.pi(dec.base.projections[x]);
    OmegaFiber f;
    f.label = dec.base.labels[x];
    auto localized = [&](const std::vector<CMatrix>& bs) {
      std::vector<CMatrix> v;
      for (const auto& b : bs) v.push_back(px * b);
      return Subspace::span(n, n, v, tol::rank, 1.0);
    };
    f.space = localized(cdb);
    const Subspace ev = localized(evb);
    const Subspace od = localized(odb);
    f.even_dim = ev.dim();
    f.odd_dim = od.dim();
    std::vector<CMatrix> both = ev.basis();
    for (auto& m : od.basis()) both.push_back(std::move(m));
    f.intersection_dim = f.even_dim + f.odd_dim - Subspace::span(n, n, both, tol::rank, 1.0).dim();
    for (const auto& b : cdb) f.centrality_residual = std::max(f.centrality_residual, (px * b - b * px).norm());
    for (Index i = 0; i < forms.dim(); ++i)
      f.forms_residual = std::max(f.forms_residual, f.space.residual(px * forms.basis(i)));
    total += f.space.dim();
    worst_central = std::max(worst_central, f.centrality_residual);
    worst_forms = std::max(worst_forms, f.forms_residual);
    out.fibers.push_back(std::move(f));
  }

  CheckList& c = out.checks;
  c.add_count("omega_fiber_dimensions", "sum_x dim(p_x C_D(A)) = dim C_D(A)", out.cd_dim, total);
  c.add("projections_central_in_cd", "p_x is central in C_D(A)", worst_central, tol::derived);
  c.add("forms_localize", "p_x Omega^1_D lies in the fiber p_x C_D(A)", worst_forms, tol::derived);

  std::mt19937_64 rng(seed);
  double gauge = 0.0;
  for (int k = 0; k < samples; ++k) {
    const CMatrix u = random_unitary(t.algebra, rng());
    const OneForm w = gauge_field(t, random_perturbation(t, rng));
    gauge = std::max(gauge, omega_gauge_residual(t, dec, u, w.evaluated));
  }
  c.add("gauge_action_localizes", "(u omega u*)(x) = u(x) omega(x) u(x)*", gauge, tol::derived);
  return out;
}

GroupBundleDims group_bundle_dims(const RealSpectralTriple& t, const FiberDecomposition& dec) {
  GroupBundleDims g;
  Index sum_u = 0, sum_gauge = 0;
  for (const auto& f : dec.fibers) {
    const Index u = static_cast<Index>(skew_hermitian_basis(f).size());
    g.unitary_dims.push_back(u);
    g.gauge_dims.push_back(u - 1);
    sum_u += u;
    sum_gauge += u - 1;
  }
  g.dim_u_a = static_cast<Index>(skew_hermitian_basis(t.algebra).size());
  g.dim_gauge = gauge_lie_algebra(t).dim;
  g.checks.add_count("unitary_fibers_sum", "sum_x dim u(B_x) = dim u(A)", g.dim_u_a, sum_u);
  g.checks.add_count("gauge_fibers_sum", "sum_x (dim u(B_x) - 1) = dim g(A, H; J)", g.dim_gauge,
                     sum_gauge);
  return g;
}

nlohmann::json to_json(const FiberDecomposition& dec, const GroupBundleDims& groups) {
  nlohmann::json points = nlohmann::json::array();
  for (size_t x = 0; x < dec.base.size(); ++x) {
    nlohmann::json p{{"label", dec.base.labels[x]},
                     {"fiber_dim", dec.fibers[x].dim()},
                     {"projection_rank", std::lround(dec.base.projections[x].trace().real())}};
    if (x < groups.unitary_dims.size()) {
      p["unitary_dim"] = groups.unitary_dims[x];
      p["gauge_fiber_dim"] = groups.gauge_dims[x];
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace ncg
