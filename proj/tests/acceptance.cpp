// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncg/gauge.hpp"
#include "ncg/localize.hpp"
#include "ncg/models.hpp"
#include "ncg/nctorus.hpp"
#include "ncg/polyparse.hpp"
#include "ncg/spectral.hpp"
#include "ncg/toric.hpp"

using namespace ncg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0 && secs >= budget_s) {
    out.pass = false;
    out.detail << " [runtime " << secs << " s over budget " << budget_s << " s]";
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const std::vector<std::string> kPresets{"hs:N=1",        "hs:N=2",        "hs:N=3",
                                        "hs:N=4",        "ym:k=2,N=1",    "ym:k=2,N=2",
                                        "ym:k=3,N=2",    "comm:k=3"};

RealSpectralTriple preset(const std::string& s) { return build_triple(parse_model_spec(s)); }

}  // namespace

int main() {
  criterion(1, "axiom suite on hs and ym models, residuals < 1e-9", 5.0, [](Outcome& o) {
    std::vector<RealSpectralTriple> ts;
    for (Index n = 1; n <= 4; ++n) ts.push_back(build_hs_model(n));
    for (auto [k, n] : {std::pair<Index, Index>{2, 1}, {2, 2}, {3, 2}})
      ts.push_back(build_finite_ym(k, n, 0.0));
    double worst = 0.0;
    for (const auto& t : ts) {
      const CheckList c = check_axioms(t);
      for (const auto& r : c.records()) {
        const bool ok = r.integer ? r.passed : (r.passed && r.residual < 1e-9);
        o.need(ok, t.label + ":" + r.name + "=" + fmt(r.residual));
        if (!r.integer) worst = std::max(worst, r.residual);
      }
    }
    o.detail << " max residual " << fmt(worst);
  });

  criterion(2, "A_J dimensions (hs 1, ym k, comm full) and A_J in Z(A) < 1e-8", 0.0, [](Outcome& o) {
    struct Case {
      std::string spec;
      Index expected;
    };
    const std::vector<Case> cases{{"hs:N=1", 1},     {"hs:N=2", 1},     {"hs:N=3", 1},
                                  {"hs:N=4", 1},     {"ym:k=2,N=1", 2}, {"ym:k=2,N=2", 2},
                                  {"ym:k=3,N=2", 3}, {"comm:k=3", 3},   {"comm:k=5", 5}};
    double worst = 0.0;
    for (const auto& c : cases) {
      const auto t = preset(c.spec);
      const FiniteStarAlgebra aj = compute_aj(t);
      o.need(aj.dim() == c.expected,
             c.spec + " dim " + std::to_string(aj.dim()) + " != " + std::to_string(c.expected));
      double central = 0.0;
      for (const auto& x : aj.basis())
        for (const auto& a : t.algebra.basis()) central = std::max(central, (x * a - a * x).norm());
      worst = std::max(worst, central);
      o.need(central < 1e-8, c.spec + " centrality " + fmt(central));
    }
    o.detail << " max [A_J, A] " << fmt(worst);
  });

  criterion(3, "dim g = dim u(A) - dim u(A_J); hs:N gives N^2 - 1", 0.0, [](Outcome& o) {
    for (const auto& s : kPresets) {
      const auto t = preset(s);
      const GaugeLieAlgebra g = gauge_lie_algebra(t);
      o.need(g.dim == g.dim_u_a - g.dim_u_aj, s + " " + std::to_string(g.dim) + " != " +
                                                   std::to_string(g.dim_u_a) + " - " +
                                                   std::to_string(g.dim_u_aj));
      if (s.rfind("hs:", 0) == 0) {
        const Index n = t.algebra.size();
        o.need(g.dim == n * n - 1, s + " gauge dim " + std::to_string(g.dim));
      }
    }
  });

  criterion(4, "pure gauge D_{u[D,u*]} = U D U* and doubled form, 20 unitaries per preset, < 1e-8",
            0.0, [](Outcome& o) {
              double worst_pure = 0.0, worst_doubled = 0.0;
              for (const auto& s : kPresets) {
                const auto t = preset(s);
                std::mt19937_64 rng(2024);
                for (int k = 0; k < 20; ++k) {
                  const CMatrix u = random_unitary(t.algebra, rng());
                  const GaugeElement g = gauge_element(t, u);
                  const OneForm w = one_form(t, {{u, u.adjoint()}});
                  const CMatrix dw = fluctuate(t, w.evaluated);
                  const double pure =
                      (dw - g.matrix * t.dirac * g.matrix.adjoint()).norm() / std::max(1.0, t.dirac.norm());
                  const Perturbation p = from_unitary(t, u);
                  const double doubled = (doubled_fluctuation(t, p) - dw).norm() / std::max(1.0, t.dirac.norm());
                  worst_pure = std::max(worst_pure, pure);
                  worst_doubled = std::max(worst_doubled, doubled);
                }
                std::mt19937_64 prng(77);
                for (int k = 0; k < 5; ++k) {
                  const Perturbation p = random_perturbation(t, prng);
                  const CMatrix dw = fluctuate(t, gauge_field(t, p).evaluated);
                  worst_doubled = std::max(
                      worst_doubled, (doubled_fluctuation(t, p) - dw).norm() / std::max(1.0, t.dirac.norm()));
                }
              }
              o.need(worst_pure < 1e-8, "pure " + fmt(worst_pure));
              o.need(worst_doubled < 1e-8, "doubled " + fmt(worst_doubled));
              o.detail << " pure " << fmt(worst_pure) << ", doubled " << fmt(worst_doubled);
            });

  criterion(5, "Pert(A) closed under 50 products; from_unitary is a homomorphism, < 1e-8", 0.0,
            [](Outcome& o) {
              double worst_cert = 0.0, worst_hom = 0.0;
              for (const auto& s : kPresets) {
                const auto t = preset(s);
                std::mt19937_64 rng(5);
                Perturbation acc = identity_perturbation(t);
                for (int k = 0; k < 50; ++k) {
                  const Perturbation p = random_perturbation(t, rng, 1);
                  Perturbation r = pert_product(t, p, random_perturbation(t, rng, 1));
                  const PertCertificates c = certify(t, r);
                  worst_cert = std::max({worst_cert, c.normalization, c.self_adjointness});
                  if (k < 3) {
                    acc = pert_product(t, acc, p);
                    const PertCertificates ca = certify(t, acc);
                    worst_cert = std::max({worst_cert, ca.normalization, ca.self_adjointness});
                  }
                }
                for (int k = 0; k < 10; ++k) {
                  const CMatrix u = random_unitary(t.algebra, rng());
                  const CMatrix v = random_unitary(t.algebra, rng());
                  const CMatrix lhs = left_right_operator(t, from_unitary(t, u * v));
                  const CMatrix rhs =
                      left_right_operator(t, pert_product(t, from_unitary(t, u), from_unitary(t, v)));
                  worst_hom = std::max(worst_hom, (lhs - rhs).norm());
                }
              }
              o.need(worst_cert < 1e-8, "certificates " + fmt(worst_cert));
              o.need(worst_hom < 1e-8, "homomorphism " + fmt(worst_hom));
              o.detail << " certificates " << fmt(worst_cert) << ", homomorphism " << fmt(worst_hom);
            });

  criterion(6, "section map bijective and multiplicative, sum of fiber dims, norm = sup over 100 elements",
            0.0, [](Outcome& o) {
              double worst_mult = 0.0, worst_norm = 0.0;
              for (const auto& s : kPresets) {
                const auto t = preset(s);
                const FiberDecomposition dec = localize(t);
                for (const char* name : {"fiber_dimensions", "section_injective", "projections_partition_unity",
                                         "projections_central"}) {
                  const CheckRecord* r = dec.checks.find(name);
                  o.need(r && r->passed, s + ":" + name);
                }
                std::mt19937_64 rng(6);
                for (int k = 0; k < 100; ++k) {
                  const CMatrix a = random_element(t.algebra, rng);
                  const CMatrix b = random_element(t.algebra, rng);
                  worst_mult = std::max(worst_mult, section_multiplicativity(dec, a, b));
                  worst_norm = std::max(worst_norm, norm_is_sup(t, dec, a).residual());
                }
              }
              o.need(worst_mult < 1e-8, "multiplicativity " + fmt(worst_mult));
              o.need(worst_norm < 1e-8, "norm sup " + fmt(worst_norm));
              o.detail << " multiplicativity " << fmt(worst_mult) << ", norm sup " << fmt(worst_norm);
            });

  criterion(7, "fiberwise gauge action over 50 (u, a) pairs < 1e-8; group bundle sequence exact", 0.0,
            [](Outcome& o) {
              double worst = 0.0;
              for (const auto& s : kPresets) {
                const auto t = preset(s);
                const FiberDecomposition dec = localize(t);
                std::mt19937_64 rng(7);
                for (int k = 0; k < 50; ++k) {
                  const CMatrix u = random_unitary(t.algebra, rng());
                  const CMatrix a = random_element(t.algebra, rng);
                  worst = std::max(worst, fiber_gauge_action(dec, u, a));
                }
                const GroupBundleDims g = group_bundle_dims(t, dec);
                o.need(g.checks.all_passed(), s + " group bundle dims");
              }
              o.need(worst < 1e-8, "diagram " + fmt(worst));
              o.detail << " diagram " << fmt(worst);
            });

  criterion(8, "Omega bundle: fiber dims sum to dim C_D(A); gauge action localizes < 1e-8", 0.0,
            [](Outcome& o) {
              double worst = 0.0;
              for (const auto& s : kPresets) {
                const auto t = preset(s);
                const FiberDecomposition dec = localize(t);
                const OmegaBundle b = omega_bundle(t, dec, 8, 10);
                const CheckRecord* dims = b.checks.find("omega_fiber_dimensions");
                o.need(dims && dims->passed, s + " omega fiber dims");
                const CheckRecord* g = b.checks.find("gauge_action_localizes");
                o.need(g && g->residual < 1e-8, s + " gauge " + (g ? fmt(g->residual) : "missing"));
                if (g) worst = std::max(worst, g->residual);
              }
              o.detail << " gauge " << fmt(worst);
            });

  criterion(9, "torus: exact associativity, U2 U1 = t U1 U2, symbolic center {1}, q=2 center", 10.0,
            [](Outcome& o) {
              const ThetaMode sym = ThetaMode::symbolic();
              std::mt19937_64 rng(9);
              std::uniform_int_distribution<int> coef(-3, 3), expo(-2, 2);
              auto draw = [&] {
                TorusElement e(sym);
                for (int k = 0; k < 4; ++k)
                  e += TorusElement::monomial(expo(rng), expo(rng), PhaseScalar::t_power(expo(rng), sym,
                                                                                            double(coef(rng))));
                return e;
              };
              for (int k = 0; k < 200; ++k) {
                const TorusElement a = draw(), b = draw(), c = draw();
                if (!((a * b) * c - a * (b * c)).is_zero()) {
                  o.need(false, "associativity");
                  break;
                }
              }
              const TorusElement u1 = TorusElement::u1(sym), u2 = TorusElement::u2(sym);
              o.need((u2 * u1 - PhaseScalar::t_power(1, sym) * (u1 * u2)).is_zero(), "U2 U1 = t U1 U2");
              const auto z = symbolic_center(4);
              o.need(z.size() == 1 && z[0] == TorusElement::Key{0, 0}, "symbolic center");
              const auto zq = center_monomials(ThetaMode::rational(1, 2), 4);
              auto has = [&](int m, int n) {
                for (const auto& k : zq)
                  if (k == TorusElement::Key{m, n}) return true;
                return false;
              };
              o.need(has(0, 0) && has(2, 0) && has(0, 2) && has(2, 2), "q=2 center misses U1^2/U2^2");
              bool only_even = true;
              for (const auto& [m, n] : zq) only_even = only_even && m % 2 == 0 && n % 2 == 0;
              o.need(only_even, "q=2 center has odd exponents");
              o.detail << " q=2 center monomials " << zq.size();
            });

  criterion(10, "sphere strata dims q^2 / q / 1 and torus-point independence", 30.0, [](Outcome& o) {
    const double hp = M_PI / 2.0;
    for (auto [p, q] : {std::pair{1, 2}, {1, 3}, {2, 5}}) {
      for (double chi : {0.0, 0.3, M_PI / 4.0, 1.2, hp}) {
        const CheckList c = stratum_independence_s3(chi, p, q);
        o.need(c.all_passed(), "s3 q=" + std::to_string(q) + " chi=" + fmt(chi));
      }
      for (auto [chi, psi] : {std::pair{0.4, 0.5}, {0.0, 0.5}, {hp, 0.3}, {0.7, hp}, {0.0, hp}}) {
        const CheckList c = stratum_independence_s4(chi, psi, p, q);
        o.need(c.all_passed(), "s4 q=" + std::to_string(q) + " chi=" + fmt(chi) + " psi=" + fmt(psi));
      }
    }
  });

  criterion(11, "continuity evidence: jump ratio in [0.3, 0.7] for 5 S3 polynomials at q=3, h=1e-2", 60.0,
            [](Outcome& o) {
              const ThetaMode mode = ThetaMode::rational(1, 3);
              const std::vector<std::string> polys{"a*ad", "a + b", "a*b + bd", "a^2*bd + 0.5*b",
                                                   "a*ad - b*bd + a"};
              for (const auto& text : polys) {
                const NormProfile prof = norm_profile(parse_sphere(text, mode), 1e-2, Sphere::S3);
                const double r = prof.ratio();
                o.need(r >= 0.3 && r <= 0.7, text + " ratio " + fmt(r));
                o.detail << " " << text << ":" << std::to_string(r).substr(0, 5);
              }
            });

  criterion(12, "orbifold dims m q^2 and center dim m for (q, m) in {(2,1), (3,2)}", 0.0, [](Outcome& o) {
    for (auto [q, m] : {std::pair{2, 1}, {3, 2}}) {
      const OrbifoldModel om = build_orbifold_algebra(q, 1, m);
      o.need(om.algebra.dim() == Index(m) * q * q, "dim q=" + std::to_string(q));
      o.need(om.center_dim == m, "center q=" + std::to_string(q));
      o.need(om.checks.all_passed(), "checks q=" + std::to_string(q));
      o.detail << " (" << q << "," << m << "): " << om.algebra.dim() << "/" << om.center_dim;
    }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
