// ncgauge: verification reports for finite real spectral triples, their
// localization, inner fluctuations and toric sphere fibers.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on malformed
// input (model specs, configuration files, options).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncg/gauge.hpp"
#include "ncg/localize.hpp"
#include "ncg/models.hpp"
#include "ncg/polyparse.hpp"
#include "ncg/spectral.hpp"
#include "ncg/toric.hpp"

using namespace ncg;
using nlohmann::json;

namespace {

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string format = "json";
};

// Malformed input, reported with exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::optional<RealSpectralTriple> triple;
  std::optional<ModelSpec> orbifold;
  std::string descriptor;
};

Loaded load_model(const std::string& text) {
  Loaded m;
  m.descriptor = text;
  try {
    if (std::filesystem::is_regular_file(text) || text.ends_with(".json")) {
      m.triple = load_triple_config(text);
      return m;
    }
    ModelSpec spec = parse_model_spec(text);
    if (spec.kind == "orbifold")
      m.orbifold = spec;
    else
      m.triple = build_triple(spec);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  } catch (const BadParameters& e) {
    throw InputError(e.what());
  } catch (const BadHopping& e) {
    throw InputError(e.what());
  }
  return m;
}

json model_json(const Loaded& m) {
  json j{{"spec", m.descriptor}};
  if (m.triple) {
    j["label"] = m.triple->label;
    j["hilbert_dim"] = m.triple->hilbert_dim();
    j["algebra_size"] = m.triple->algebra.size();
    j["algebra_dim"] = m.triple->algebra.dim();
    j["epsilon"] = m.triple->epsilon;
    j["epsilon_prime"] = m.triple->epsilon_prime;
  }
  return j;
}

std::string checks_csv(const CheckList& c) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "name,scope,residual,tolerance,expected,actual,passed\n";
  for (const auto& r : c.records()) {
    os << r.name << ',' << to_string(r.scope) << ',' << r.residual << ',' << r.tolerance << ',';
    if (r.integer)
      os << r.expected << ',' << r.actual;
    else
      os << ',';
    os << ',' << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

int emit(const Options& opt, const std::string& command, const Loaded* model, CheckList checks,
         json summary, json extra = json::object(), const std::string& csv_override = {}) {
  if (opt.tol) checks.override_tolerance(*opt.tol);
  const bool passed = checks.all_passed();
  std::string text;
  if (opt.format == "csv") {
    text = csv_override.empty() ? checks_csv(checks) : csv_override;
  } else {
    json report{{"schema", kReportSchema},
                {"command", command},
                {"seed", opt.seed},
                {"tolerance_override", opt.tol ? json(*opt.tol) : json(nullptr)},
                {"summary", std::move(summary)},
                {"checks", to_json(checks)},
                {"passed", passed}};
    if (model) report["model"] = model_json(*model);
    for (auto& [k, v] : extra.items()) report[k] = v;
    text = report.dump(2) + "\n";
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot write '" + opt.out + "'");
    f << text;
  }
  if (!opt.out.empty() || opt.format == "csv")
    std::cerr << command << ": " << (passed ? "pass" : "FAIL") << " (" << checks.records().size()
              << " checks)\n";
  return passed ? 0 : 1;
}

int cmd_check(const Options& opt, const std::string& spec) {
  const Loaded m = load_model(spec);
  CheckList checks;
  json summary;
  if (m.orbifold) {
    const int q = int(m.orbifold->integer("q", 1)), p = int(m.orbifold->integer("p", 1)),
              mm = int(m.orbifold->integer("m", 1));
    OrbifoldModel om;
    try {
      om = build_orbifold_algebra(q, p, mm);
    } catch (const BadParameters& e) {
      throw InputError(e.what());
    }
    checks.append(om.checks, "orbifold");
    summary = {{"algebra_dim", om.algebra.dim()}, {"center_dim", om.center_dim}};
    return emit(opt, "check", &m, checks, summary);
  }
  const RealSpectralTriple& t = *m.triple;
  checks.append(check_axioms(t), "axiom");
  checks.append(verify_aj_properties(t), "aj");
  const GaugeLieAlgebra g = gauge_lie_algebra(t);
  checks.append(g.checks, "gauge");

  std::mt19937_64 rng(opt.seed);
  long inconsistent = 0;
  for (int k = 0; k < 5; ++k)
    if (!ad_kernel_check(t, random_unitary(t.algebra, rng())).consistent()) ++inconsistent;
  const FiniteStarAlgebra aj = compute_aj(t);
  for (const auto& x : aj.basis()) {
    const CMatrix u = exp_skew_hermitian(kI * 0.5 * (x + x.adjoint()));
    if (!ad_kernel_check(t, u).consistent()) ++inconsistent;
  }
  checks.add_count("gauge.ad_kernel", "U = 1 exactly when u lies in A_J", 0, inconsistent,
                   Scope::FiniteShadow);

  summary = {{"aj_dim", aj.dim()},
             {"gauge_dim", g.dim},
             {"dim_u_a", g.dim_u_a},
             {"dim_u_aj", g.dim_u_aj},
             {"one_form_dim", one_form_space(t).dim()},
             {"cd_dim", c_d_algebra(t).algebra.dim()}};
  return emit(opt, "check", &m, checks, summary);
}

int cmd_localize(const Options& opt, const std::string& spec) {
  const Loaded m = load_model(spec);
  if (!m.triple) throw InputError("localize needs a spectral triple, not '" + spec + "'");
  const RealSpectralTriple& t = *m.triple;
  CheckList checks;
  FiberDecomposition dec;
  try {
    dec = localize(t, opt.seed);
  } catch (const DegenerateDraw& e) {
    checks.add_flag("localize.minimal_projections", "A_J splits into minimal projections", false,
                    Scope::Exact, e.what());
    return emit(opt, "localize", &m, checks, json::object());
  }
  checks.append(dec.checks, "localize");
  const GroupBundleDims groups = group_bundle_dims(t, dec);
  checks.append(groups.checks, "groups");
  const OmegaBundle omega = omega_bundle(t, dec, opt.seed);
  checks.append(omega.checks, "omega");

  std::mt19937_64 rng(opt.seed);
  double sup = 0.0, action = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = random_element(t.algebra, rng);
    sup = std::max(sup, norm_is_sup(t, dec, a).residual());
    action = std::max(action, fiber_gauge_action(dec, random_unitary(t.algebra, rng()), a));
  }
  checks.add("localize.norm_is_sup", "||a|| = sup_x ||a(x)||", sup, tol::derived);
  checks.add("localize.fiber_gauge_action", "(u a u*)(x) = u(x) a(x) u(x)*", action, tol::derived);

  json points = to_json(dec, groups);
  for (size_t x = 0; x < omega.fibers.size() && x < points.size(); ++x) {
    points[x]["omega_dim"] = omega.fibers[x].space.dim();
    points[x]["omega_even_dim"] = omega.fibers[x].even_dim;
    points[x]["omega_odd_dim"] = omega.fibers[x].odd_dim;
  }
  json summary{{"points", dec.base.size()},
               {"aj_dim", dec.aj.dim()},
               {"cd_dim", omega.cd_dim},
               {"dim_u_a", groups.dim_u_a},
               {"gauge_dim", groups.dim_gauge}};
  return emit(opt, "localize", &m, checks, summary, json{{"fibers", points}});
}

struct PertSpec {
  std::string kind;  // zero | pure | random
  std::uint64_t seed = 1;
  int pairs = 2;
};

PertSpec parse_pert(const std::string& text, std::uint64_t fallback_seed) {
  PertSpec p;
  p.seed = fallback_seed;
  const auto colon = text.find(':');
  p.kind = text.substr(0, colon);
  if (p.kind != "zero" && p.kind != "pure" && p.kind != "random")
    throw InputError("perturbation must be zero, pure[:seed=N] or random[:seed=N,pairs=K], got '" +
                     text + "'");
  if (colon == std::string::npos) return p;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const std::string val = eq == std::string::npos ? "" : item.substr(eq + 1);
    try {
      size_t used = 0;
      if (key == "seed") {
        p.seed = std::stoull(val, &used);
      } else if (key == "pairs" && p.kind == "random") {
        p.pairs = std::stoi(val, &used);
        if (p.pairs < 0 || p.pairs > 16) used = 0;
      } else {
        throw InputError("unknown perturbation parameter '" + key + "'");
      }
      if (used != val.size() || val.empty()) throw std::invalid_argument(val);
    } catch (const std::logic_error&) {
      throw InputError("bad value '" + val + "' for perturbation parameter '" + key + "'");
    }
  }
  return p;
}

int cmd_fluctuate(const Options& opt, const std::string& spec, const std::string& pert_text) {
  const PertSpec ps = parse_pert(pert_text, opt.seed);
  const Loaded m = load_model(spec);
  if (!m.triple) throw InputError("fluctuate needs a spectral triple, not '" + spec + "'");
  const RealSpectralTriple& t = *m.triple;
  const double scale = std::max(1.0, t.dirac.norm());
  const CMatrix& k = t.j.kernel();
  CheckList checks;
  std::mt19937_64 rng(ps.seed);

  Perturbation p;
  std::optional<CMatrix> unitary;
  if (ps.kind == "zero") {
    p = identity_perturbation(t);
  } else if (ps.kind == "pure") {
    unitary = random_unitary(t.algebra, rng());
    p = from_unitary(t, *unitary);
  } else {
    p = random_perturbation(t, rng, ps.pairs);
  }
  const PertCertificates cert = certify(t, p);
  checks.add("pert.normalization", "sum_j a_j b_j = 1", cert.normalization, tol::derived);
  checks.add("pert.self_adjoint", "sum_j a_j (x) b_j^op is self-adjoint under the involution",
             cert.self_adjointness, tol::derived);

  const OneForm w = gauge_field(t, p);
  const CMatrix dw = fluctuate(t, w.evaluated);
  checks.add("fluct.form_self_adjoint", "omega = sum_j a_j [D, b_j] is self-adjoint",
             hermiticity_residual(w.evaluated), tol::derived);
  checks.add("fluct.self_adjoint", "D_omega is self-adjoint", hermiticity_residual(dw), tol::derived);
  checks.add("fluct.real_structure", "J D_omega = eps' D_omega J",
             (k * dw.conjugate() - double(t.epsilon_prime) * dw * k).norm() / scale, tol::derived);
  checks.add("fluct.doubled_form", "sum a_i a_j^ D b_i b_j^ = D + omega + eps' J omega J^-1",
             (doubled_fluctuation(t, p) - dw).norm() / scale, tol::derived);

  if (ps.kind == "zero") {
    checks.add("fluct.unchanged", "the zero fluctuation leaves D unchanged", (dw - t.dirac).norm() / scale,
               tol::derived);
  } else if (ps.kind == "pure") {
    const GaugeElement g = gauge_element(t, *unitary);
    checks.add("fluct.pure_gauge", "D_{u[D,u*]} = U D U*",
               (dw - g.matrix * t.dirac * g.matrix.adjoint()).norm() / scale, tol::derived);
    const RVector before = Eigen::SelfAdjointEigenSolver<CMatrix>(t.dirac).eigenvalues();
    const RVector after = Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (dw + dw.adjoint())).eigenvalues();
    checks.add("fluct.isospectral", "a pure gauge fluctuation preserves the spectrum of D",
               (before - after).norm() / scale, tol::derived);
  } else {
    const CMatrix u = random_unitary(t.algebra, rng());
    const OneForm zero = one_form(t, {});
    const GaugeTransformed gt = gauge_transform_field(t, w, zero, u);
    checks.add("fluct.gauge_covariance", "D_{omega^u} = U D_omega U* with omega^u = u omega u* + u[D, u*]",
               gt.covariance_residual / scale, tol::derived);
  }
  json summary{{"perturbation", pert_text},
               {"terms", p.terms.size()},
               {"omega_norm", w.evaluated.norm()},
               {"shift_norm", (dw - t.dirac).norm()}};
  return emit(opt, "fluctuate", &m, checks, summary);
}

int cmd_toric_scan(const Options& opt, const std::string& sphere, int p, int q, double h,
                   std::string poly) {
  if (sphere != "s3" && sphere != "s4") throw InputError("sphere must be s3 or s4");
  const Sphere which = sphere == "s3" ? Sphere::S3 : Sphere::S4;
  if (!(h > 0.0) || h > 0.5) throw InputError("h must lie in (0, 0.5]");
  ThetaMode mode;
  SphereElement e;
  try {
    mode = ThetaMode::rational(p, q);
    if (poly.empty()) poly = which == Sphere::S3 ? "a + b" : "a + b + x";
    e = parse_sphere(poly, mode);
    if (which == Sphere::S3 && e.uses_x()) throw InputError("x is not a generator of S^3");
  } catch (const ParseError& err) {
    throw InputError(err.what());
  } catch (const BadParameters& err) {
    throw InputError(err.what());
  }

  const NormProfile prof = norm_profile(e, h, which, true);
  CheckList checks;
  long wrong = 0;
  for (const auto& row : prof.rows)
    if (row.fiber_dim != expected_fiber_dim(row.stratum, q)) ++wrong;
  checks.add_count("toric.fiber_dims_match_strata", "fiber dim q^2 inside, q on an edge, 1 at the pole",
                   0, wrong, Scope::RationalShadow);
  if (prof.jump_h < 1e-12) {
    checks.add_flag("toric.continuity", "adjacent norm jumps shrink linearly with the step", true,
                    Scope::ContinuityEvidence, "norm profile is constant");
  } else {
    auto& r = checks.add("toric.continuity", "adjacent norm jumps shrink linearly with the step",
                         std::abs(prof.ratio() - 0.5), 0.2, Scope::ContinuityEvidence);
    r.detail = "ratio " + std::to_string(prof.ratio());
  }
  json rows = json::array();
  for (const auto& row : prof.rows) {
    json jr{{"chi", row.chi}, {"r", row.r}, {"s", row.s}, {"x", row.x}, {"norm", row.norm},
            {"stratum", to_string(row.stratum)}, {"fiber_dim", row.fiber_dim}};
    if (which == Sphere::S4) jr["psi"] = row.psi;
    rows.push_back(std::move(jr));
  }
  json summary{{"sphere", sphere},  {"p", p},          {"q", q},
               {"h", h},            {"polynomial", poly}, {"rows", prof.rows.size()},
               {"jump_h", prof.jump_h}, {"jump_half", prof.jump_half}, {"ratio", prof.ratio()}};
  return emit(opt, "toric-scan", nullptr, checks, summary, json{{"profile", rows}}, profile_csv(prof));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification reports for finite real spectral triples and toric fibers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::optional<std::uint64_t> seed;
  app.add_option("--out", opt.out, "Write the report to this path instead of stdout");
  app.add_option("--seed", seed, "Seed for random draws (default 1)");
  app.add_option("--tol", opt.tol, "Single tolerance replacing every residual threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string spec, pert = "zero", sphere, poly;
  int p = 1, q = 1;
  double h = 0.01;
  auto* check = app.add_subcommand("check", "Axioms, A_J and gauge algebra of a model");
  check->add_option("model", spec, "Preset (hs:N=3, ym:k=2,N=2, comm:k=3, orbifold:q=3,p=1,m=2) or config file")
      ->required();
  auto* loc = app.add_subcommand("localize", "Fibers over the spectrum of A_J");
  loc->add_option("model", spec, "Preset or config file")->required();
  auto* fl = app.add_subcommand("fluctuate", "Inner fluctuation by a perturbation");
  fl->add_option("model", spec, "Preset or config file")->required();
  fl->add_option("perturbation", pert, "zero | pure[:seed=N] | random[:seed=N,pairs=K]");
  auto* scan = app.add_subcommand("toric-scan", "Fiber norms and dimensions over the base of S3/S4");
  scan->add_option("sphere", sphere, "s3 or s4")->required();
  scan->add_option("p", p, "Numerator of theta")->required();
  scan->add_option("q", q, "Denominator of theta")->required();
  scan->add_option("step", h, "Grid step h")->required();
  scan->add_option("--poly", poly, "Sphere polynomial in a, ad, b, bd, x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed) opt.seed = *seed;

  try {
    if (*check) return cmd_check(opt, spec);
    if (*loc) return cmd_localize(opt, spec);
    if (*fl) return cmd_fluctuate(opt, spec, pert);
    return cmd_toric_scan(opt, sphere, p, q, h, poly);
  } catch (const InputError& e) {
    std::cerr << "ncgauge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ncgauge: " << e.what() << "\n";
    return 1;
  }
}
