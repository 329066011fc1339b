#pragma once

// Fibers of the toric spheres S^3_theta and S^4_theta at rational theta = p/q.
// Over a base point with radii (r, s) and height x, alpha -> r z1 R1,
// beta -> s z2 R2, x -> x I, where (R1, R2) are the clock/shift unitaries.

#include <string>
#include <vector>

#include "json.hpp"
#include "ncg/nctorus.hpp"
#include "ncg/report.hpp"
#include "ncg/sphere.hpp"

namespace ncg {

struct BasePoint3 {
  double chi = 0.0;  // [0, pi/2]
  cplx z1 = 1.0;
  cplx z2 = 1.0;
};

struct BasePoint4 {
  double chi = 0.0;  // [0, pi/2]
  double psi = 0.0;  // [0, pi/2]
  cplx z1 = 1.0;
  cplx z2 = 1.0;

  double r() const;  // cos chi cos psi
  double s() const;  // sin chi cos psi
  double x() const;  // sin psi
};

enum class Stratum { Interior, EdgeAlpha, EdgeBeta, Pole };
std::string to_string(Stratum s);

/// Radii below 1e-12 are treated as zero.
double snap_radius(double v);

Stratum s3_stratum(double chi);
Stratum s4_stratum(const BasePoint4& pt);
/// q^2, q, q, 1.
Index expected_fiber_dim(Stratum s, int q);

/// ModeMismatch unless e is in rational mode p/q; BadParameters if e uses x or
/// the point is out of range.
CMatrix s3_eval(const SphereElement& e, const BasePoint3& pt);
CMatrix s4_eval(const SphereElement& e, const BasePoint4& pt);

/// Dimension of the unital algebra generated by the evaluated generators.
Index s3_fiber_dimension(double chi, int p, int q, cplx z1 = 1.0, cplx z2 = 1.0);
Index s4_fiber_dimension(const BasePoint4& pt, int p, int q);

/// Fiber dimension at a base point for every one of the q^2 canonical torus
/// points; checks they agree and match the stratum.
CheckList stratum_independence_s3(double chi, int p, int q);
CheckList stratum_independence_s4(double chi, double psi, int p, int q);

enum class Sphere { S3, S4 };

struct InvariantSubalgebra {
  std::vector<SphereMonomial> monomials;
  CheckList checks;
};
/// Torus-invariant monomials (alpha alpha*)^a (beta beta*)^b x^c with
/// a + b + c <= d (c = 0 on S3), checked commutative and fixed by the action.
InvariantSubalgebra invariant_subalgebra(int d, Sphere which);

struct NormRow {
  double chi = 0.0;
  double psi = 0.0;
  double norm = 0.0;
  Stratum stratum = Stratum::Interior;
  Index fiber_dim = 0;
  double r = 0.0, s = 0.0, x = 0.0;
};

struct NormProfile {
  Sphere sphere = Sphere::S3;
  double h = 0.0;
  std::vector<NormRow> rows;    // resolution h, row-major in (chi, psi)
  double jump_h = 0.0;          // max adjacent jump at resolution h
  double jump_half = 0.0;       // same at h / 2
  double ratio() const { return jump_h > 0.0 ? jump_half / jump_h : 0.0; }
};

/// Fiber norm (max over the q^2 canonical torus points) on a uniform grid of
/// step close to h covering [0, pi/2] (squared for S4). Fiber dims are filled
/// when with_dims is set.
NormProfile norm_profile(const SphereElement& e, double h, Sphere which, bool with_dims = false,
                         Exec exec = Exec::Parallel);

/// Max over the q^2 canonical torus points of the evaluated norm.
double fiber_norm_s3(const SphereElement& e, double chi);
double fiber_norm_s4(const SphereElement& e, double chi, double psi);

std::string profile_csv(const NormProfile& prof);

struct CoveringSliceReport {
  bool applicable = false;
  cplx phase = 0.0;
  cplx tau = 0.0;
  /// tau recomputed by averaging the normalized matrix trace over a grid of
  /// roots of unity fine enough to separate every monomial.
  cplx tau_from_matrices = 0.0;
  bool scalar = false;
  CheckList checks;
};
CoveringSliceReport covering_slice_check(const TorusElement& u);

/// Averaged normalized trace of torus_rep over (N-th roots of unity)^2 with
/// N larger than every exponent in the support.
cplx matrix_trace_average(const TorusElement& a);

}  // namespace ncg
