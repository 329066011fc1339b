#include "ncg/toric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ncg/kernels.hpp"

namespace ncg {

namespace {

constexpr double kHalfPi = M_PI / 2.0;

void check_angle(double a, const char* name) {
  if (!(a >= -1e-12 && a <= kHalfPi + 1e-12))
    throw BadParameters(std::string(name) + " = " + std::to_string(a) + " is outside [0, pi/2]");
}

void check_torus_point(cplx z1, cplx z2) {
  if (std::abs(std::abs(z1) - 1.0) > 1e-12 || std::abs(std::abs(z2) - 1.0) > 1e-12)
    throw NotOnTorus("torus coordinates must have modulus 1");
}

CMatrix power(const CMatrix& m, int k) {
  CMatrix out = identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// Evaluates e with alpha -> ra z1 R1, beta -> rb z2 R2, x -> h I.
CMatrix evaluate(const SphereElement& e, double ra, double rb, double h, cplx z1, cplx z2) {
  const ThetaMode mode = e.mode();
  if (!mode.is_rational()) throw ModeMismatch("sphere evaluation needs a rational theta");
  const int q = mode.q;
  const auto [r1, r2] = clock_shift(q, mode.p);
  const CMatrix a = (ra * z1) * r1;
  const CMatrix b = (rb * z2) * r2;
  const CMatrix ad = a.adjoint();
  const CMatrix bd = b.adjoint();
  CMatrix out = CMatrix::Zero(q, q);
  for (const auto& [m, c] : e.terms()) {
    const CMatrix word = power(a, m.a) * power(ad, m.ad) * power(b, m.b) * power(bd, m.bd);
    out += (c.value() * std::pow(h, m.c)) * word;
  }
  return out;
}

std::vector<cplx> roots_of_unity(int q) {
  std::vector<cplx> out;
  for (int k = 0; k < q; ++k) out.push_back(std::polar(1.0, 2.0 * M_PI * k / q));
  return out;
}

Index closure_dim(double ra, double rb, double h, int p, int q, cplx z1, cplx z2) {
  const auto [r1, r2] = clock_shift(q, p);
  std::vector<CMatrix> gens{(ra * z1) * r1, (rb * z2) * r2, h * identity(q)};
  return generated_algebra(gens, true, Exec::Serial).dim();
}

}  // namespace

double BasePoint4::r() const { return snap_radius(std::cos(chi) * std::cos(psi)); }
double BasePoint4::s() const { return snap_radius(std::sin(chi) * std::cos(psi)); }
double BasePoint4::x() const { return snap_radius(std::sin(psi)); }

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::Interior:
      return "interior";
    case Stratum::EdgeAlpha:
      return "edge_alpha";
    case Stratum::EdgeBeta:
      return "edge_beta";
    case Stratum::Pole:
      return "pole";
  }
  return "interior";
}

double snap_radius(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

Stratum s3_stratum(double chi) {
  const double r = snap_radius(std::cos(chi));
  const double s = snap_radius(std::sin(chi));
  if (s == 0.0) return Stratum::EdgeAlpha;
  if (r == 0.0) return Stratum::EdgeBeta;
  return Stratum::Interior;
}

Stratum s4_stratum(const BasePoint4& pt) {
  const double r = pt.r(), s = pt.s();
  if (r == 0.0 && s == 0.0) return Stratum::Pole;
  if (s == 0.0) return Stratum::EdgeAlpha;
  if (r == 0.0) return Stratum::EdgeBeta;
  return Stratum::Interior;
}

Index expected_fiber_dim(Stratum s, int q) {
  switch (s) {
    case Stratum::Interior:
      return Index(q) * q;
    case Stratum::EdgeAlpha:
    case Stratum::EdgeBeta:
      return q;
    case Stratum::Pole:
      return 1;
  }
  return 0;
}

CMatrix s3_eval(const SphereElement& e, const BasePoint3& pt) {
  check_angle(pt.chi, "chi");
  check_torus_point(pt.z1, pt.z2);
  if (e.uses_x()) throw BadParameters("x is not a generator of S^3_theta");
  return evaluate(e, snap_radius(std::cos(pt.chi)), snap_radius(std::sin(pt.chi)), 0.0, pt.z1, pt.z2);
}

CMatrix s4_eval(const SphereElement& e, const BasePoint4& pt) {
  check_angle(pt.chi, "chi");
  check_angle(pt.psi, "psi");
  check_torus_point(pt.z1, pt.z2);
  return evaluate(e, pt.r(), pt.s(), pt.x(), pt.z1, pt.z2);
}

Index s3_fiber_dimension(double chi, int p, int q, cplx z1, cplx z2) {
  check_angle(chi, "chi");
  ThetaMode::rational(p, q);
  return closure_dim(snap_radius(std::cos(chi)), snap_radius(std::sin(chi)), 0.0, p, q, z1, z2);
}

Index s4_fiber_dimension(const BasePoint4& pt, int p, int q) {
  check_angle(pt.chi, "chi");
  check_angle(pt.psi, "psi");
  ThetaMode::rational(p, q);
  return closure_dim(pt.r(), pt.s(), pt.x(), p, q, pt.z1, pt.z2);
}

namespace {

CheckList independence(Stratum st, int q, const std::function<Index(cplx, cplx)>& dim_at) {
  CheckList out;
  const Index expected = expected_fiber_dim(st, q);
  long mismatches = 0;
  Index first = -1;
  for (cplx z1 : roots_of_unity(q))
    for (cplx z2 : roots_of_unity(q)) {
      const Index d = dim_at(z1, z2);
      if (first < 0) first = d;
      if (d != first) ++mismatches;
    }
  out.add_count("dim_matches_stratum", "fiber dimension " + to_string(st), expected, first,
                Scope::RationalShadow);
  out.add_count("dim_independent_of_torus_point", "same dimension at all q^2 torus points", 0,
                mismatches, Scope::RationalShadow);
  return out;
}

}  // namespace

CheckList stratum_independence_s3(double chi, int p, int q) {
  return independence(s3_stratum(chi), q,
                      [&](cplx z1, cplx z2) { return s3_fiber_dimension(chi, p, q, z1, z2); });
}

CheckList stratum_independence_s4(double chi, double psi, int p, int q) {
  const BasePoint4 base{chi, psi, 1.0, 1.0};
  return independence(s4_stratum(base), q, [&](cplx z1, cplx z2) {
    return s4_fiber_dimension(BasePoint4{chi, psi, z1, z2}, p, q);
  });
}

InvariantSubalgebra invariant_subalgebra(int d, Sphere which) {
  if (d < 0) throw BadParameters("degree bound must be nonnegative");
  InvariantSubalgebra out;
  const int cmax = which == Sphere::S4 ? d : 0;
  for (int c = 0; c <= cmax; ++c)
    for (int a = 0; a + c <= d; ++a)
      for (int b = 0; a + b + c <= d; ++b) out.monomials.push_back(SphereMonomial{a, a, b, b, c});

  const ThetaMode sym = ThetaMode::symbolic();
  std::vector<SphereElement> elems;
  for (const auto& m : out.monomials) elems.push_back(SphereElement::monomial(m, sym));
  long noncommuting = 0;
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j)
      if (!(elems[i] * elems[j] - elems[j] * elems[i]).is_zero()) ++noncommuting;
  out.checks.add_count("commutative", "invariant monomials commute after rewriting", 0,
                       noncommuting, Scope::Exact);

  double moved = 0.0;
  const double angles[][2] = {{0.3, 1.1}, {2.0, -0.7}, {M_PI / 3.0, M_PI / 5.0}};
  for (const auto& e : elems)
    for (const auto& t : angles)
      moved = std::max(moved, SphereElement::distance(
                                  e.torus_action(std::polar(1.0, t[0]), std::polar(1.0, t[1])), e));
  out.checks.add("torus_fixed", "f(t.x) = sigma_t(f(x)) fixes invariant monomials", moved, 1e-12,
                 Scope::Exact);
  return out;
}

double fiber_norm_s3(const SphereElement& e, double chi) {
  double best = 0.0;
  const auto roots = roots_of_unity(e.mode().q);
  for (cplx z1 : roots)
    for (cplx z2 : roots) best = std::max(best, op_norm(s3_eval(e, BasePoint3{chi, z1, z2})));
  return best;
}

double fiber_norm_s4(const SphereElement& e, double chi, double psi) {
  double best = 0.0;
  const auto roots = roots_of_unity(e.mode().q);
  for (cplx z1 : roots)
    for (cplx z2 : roots) best = std::max(best, op_norm(s4_eval(e, BasePoint4{chi, psi, z1, z2})));
  return best;
}

namespace {

struct Grid {
  Index n = 0;
  double step = 0.0;
  double at(Index i) const { return i == n - 1 ? kHalfPi : double(i) * step; }
};

Grid make_grid(double h) {
  if (!(h > 0.0)) throw BadParameters("grid resolution must be positive");
  Grid g;
  g.n = std::max<Index>(2, std::lround(kHalfPi / h)) + 1;
  g.step = kHalfPi / double(g.n - 1);
  return g;
}

Grid refine(const Grid& g) {
  Grid f;
  f.n = 2 * (g.n - 1) + 1;
  f.step = kHalfPi / double(f.n - 1);
  return f;
}

std::vector<double> norms_on(const SphereElement& e, const Grid& g, Sphere which, Exec exec) {
  const Index count = which == Sphere::S3 ? g.n : g.n * g.n;
  std::vector<double> out(static_cast<size_t>(count));
  kernels::for_each_index(count, exec, [&](Index k) {
    if (which == Sphere::S3) {
      out[static_cast<size_t>(k)] = fiber_norm_s3(e, g.at(k));
    } else {
      out[static_cast<size_t>(k)] = fiber_norm_s4(e, g.at(k / g.n), g.at(k % g.n));
    }
  });
  return out;
}

double max_jump(const std::vector<double>& v, const Grid& g, Sphere which) {
  double worst = 0.0;
  if (which == Sphere::S3) {
    for (Index i = 0; i + 1 < g.n; ++i)
      worst = std::max(worst, std::abs(v[static_cast<size_t>(i + 1)] - v[static_cast<size_t>(i)]));
    return worst;
  }
  for (Index i = 0; i < g.n; ++i)
    for (Index j = 0; j < g.n; ++j) {
      const double here = v[static_cast<size_t>(i * g.n + j)];
      if (i + 1 < g.n) worst = std::max(worst, std::abs(v[static_cast<size_t>((i + 1) * g.n + j)] - here));
      if (j + 1 < g.n) worst = std::max(worst, std::abs(v[static_cast<size_t>(i * g.n + j + 1)] - here));
    }
  return worst;
}

}  // namespace

NormProfile norm_profile(const SphereElement& e, double h, Sphere which, bool with_dims,
                         Exec exec) {
  if (!e.mode().is_rational()) throw ModeMismatch("norm profiles need a rational theta");
  if (which == Sphere::S3 && e.uses_x()) throw BadParameters("x is not a generator of S^3_theta");
  NormProfile prof;
  prof.sphere = which;
  prof.h = h;
  const Grid g = make_grid(h);
  const Grid f = refine(g);
  const auto coarse = norms_on(e, g, which, exec);
  const auto fine = norms_on(e, f, which, exec);
  prof.jump_h = max_jump(coarse, g, which);
  prof.jump_half = max_jump(fine, f, which);

  const int p = e.mode().p, q = e.mode().q;
  prof.rows.resize(coarse.size());
  kernels::for_each_index(static_cast<Index>(coarse.size()), exec, [&](Index k) {
    NormRow& row = prof.rows[static_cast<size_t>(k)];
    row.norm = coarse[static_cast<size_t>(k)];
    if (which == Sphere::S3) {
      row.chi = g.at(k);
      row.r = snap_radius(std::cos(row.chi));
      row.s = snap_radius(std::sin(row.chi));
      row.stratum = s3_stratum(row.chi);
      if (with_dims) row.fiber_dim = s3_fiber_dimension(row.chi, p, q);
    } else {
      const BasePoint4 pt{g.at(k / g.n), g.at(k % g.n), 1.0, 1.0};
      row.chi = pt.chi;
      row.psi = pt.psi;
      row.r = pt.r();
      row.s = pt.s();
      row.x = pt.x();
      row.stratum = s4_stratum(pt);
      if (with_dims) row.fiber_dim = s4_fiber_dimension(pt, p, q);
    }
  });
  return prof;
}

std::string profile_csv(const NormProfile& prof) {
  std::ostringstream os;
  os << std::setprecision(12);
  const bool s4 = prof.sphere == Sphere::S4;
  os << (s4 ? "chi,psi,r,s,x,norm,stratum,fiber_dim\n" : "chi,r,s,x,norm,stratum,fiber_dim\n");
  for (const auto& row : prof.rows) {
    os << row.chi << ',';
    if (s4) os << row.psi << ',';
    os << row.r << ',' << row.s << ',' << row.x << ',' << row.norm << ',' << to_string(row.stratum)
       << ',' << row.fiber_dim << '\n';
  }
  return os.str();
}

cplx matrix_trace_average(const TorusElement& a) {
  const ThetaMode mode = a.mode();
  if (!mode.is_rational()) throw ModeMismatch("matrix traces need a rational theta");
  int top = 0;
  for (const auto& [k, c] : a.terms()) top = std::max({top, std::abs(k.first), std::abs(k.second)});
  const int n = top + 1;
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMatrix m = torus_rep(a, std::polar(1.0, 2.0 * M_PI * i / n), std::polar(1.0, 2.0 * M_PI * j / n));
      sum += m.trace() / double(mode.q);
    }
  return sum / double(n * n);
}

CoveringSliceReport covering_slice_check(const TorusElement& u) {
  CoveringSliceReport rep;
  const ThetaMode mode = u.mode();
  if (!mode.is_rational()) throw ModeMismatch("covering slice check needs a rational theta");
  double unitarity = 0.0;
  for (cplx z1 : roots_of_unity(mode.q))
    for (cplx z2 : roots_of_unity(mode.q)) unitarity = std::max(unitarity, unitarity_residual(torus_rep(u, z1, z2)));
  rep.checks.add("unitary_samples", "u u* = 1 under the matrix representation", unitarity, tol::derived,
                 Scope::RationalShadow);

  rep.tau = trace_state(u).value();
  rep.tau_from_matrices = matrix_trace_average(u);
  rep.checks.add("trace_cross_check", "tau(u) equals the averaged normalized matrix trace",
                 std::abs(rep.tau - rep.tau_from_matrices), tol::membership, Scope::RationalShadow);

  try {
    rep.phase = phase_map(u);
    rep.applicable = true;
  } catch (const VanishingTrace& e) {
    rep.applicable = false;
    rep.checks.add_flag("phase_map", "phi(u) = tau(u)/|tau(u)|", true, Scope::Exact,
                        "inapplicable: tau(u) vanishes");
    return rep;
  }
  rep.checks.add_flag("phase_map", "phi(u) = tau(u)/|tau(u)|", true, Scope::Exact);

  const TorusElement scalar = TorusElement::one(mode) * rep.tau;
  rep.scalar = TorusElement::distance(u, scalar) < tol::derived;
  const bool trivial_phase = std::abs(rep.phase - 1.0) < tol::derived;
  if (rep.scalar && trivial_phase) {
    rep.checks.add("kernel_is_trivial", "u scalar and phi(u) = 1 imply u = 1",
                   TorusElement::distance(u, TorusElement::one(mode)), 1e-7, Scope::Exact);
  } else {
    rep.checks.add_flag("kernel_is_trivial", "u scalar and phi(u) = 1 imply u = 1", true,
                        Scope::Exact, "premise not met");
  }
  return rep;
}

}  // namespace ncg
