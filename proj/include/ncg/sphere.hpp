#pragma once

// Polynomials in the toric sphere generators alpha, alpha*, beta, beta* and
// the central x, normal ordered as alpha^a alpha*^a' beta^b beta*^b' x^c.
// Moving a beta-letter to the right of an alpha-letter costs t^{s s'}, where
// s = +1 for a plain letter and -1 for a starred one. The sphere relation is
// never used for rewriting.

#include <array>
#include <map>
#include <string>

#include "ncg/nctorus.hpp"

namespace ncg {

struct SphereMonomial {
  int a = 0;   // alpha
  int ad = 0;  // alpha*
  int b = 0;   // beta
  int bd = 0;  // beta*
  int c = 0;   // x

  auto operator<=>(const SphereMonomial&) const = default;
  int degree() const { return a + ad + b + bd + c; }
};

class SphereElement {
 public:
  explicit SphereElement(ThetaMode mode = {}) : mode_(mode) {}
  static SphereElement one(ThetaMode mode);
  static SphereElement monomial(const SphereMonomial& m, const PhaseScalar& c);
  static SphereElement monomial(const SphereMonomial& m, ThetaMode mode, cplx c = 1.0);
  static SphereElement alpha(ThetaMode mode) { return monomial({1, 0, 0, 0, 0}, mode); }
  static SphereElement alpha_star(ThetaMode mode) { return monomial({0, 1, 0, 0, 0}, mode); }
  static SphereElement beta(ThetaMode mode) { return monomial({0, 0, 1, 0, 0}, mode); }
  static SphereElement beta_star(ThetaMode mode) { return monomial({0, 0, 0, 1, 0}, mode); }
  static SphereElement x(ThetaMode mode) { return monomial({0, 0, 0, 0, 1}, mode); }

  ThetaMode mode() const { return mode_; }
  const std::map<SphereMonomial, PhaseScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool uses_x() const;

  SphereElement& operator+=(const SphereElement& o);
  SphereElement& operator-=(const SphereElement& o);
  friend SphereElement operator+(SphereElement a, const SphereElement& b) { return a += b; }
  friend SphereElement operator-(SphereElement a, const SphereElement& b) { return a -= b; }
  friend SphereElement operator*(const SphereElement& a, const SphereElement& b);
  friend SphereElement operator*(SphereElement a, cplx c);
  friend SphereElement operator*(cplx c, SphereElement a) { return std::move(a) * c; }
  friend SphereElement operator*(const PhaseScalar& c, const SphereElement& a);

  SphereElement adjoint() const;
  /// Image under alpha -> w1 alpha, beta -> w2 beta (|w_i| = 1).
  SphereElement torus_action(cplx w1, cplx w2) const;

  static double distance(const SphereElement& a, const SphereElement& b);
  std::string to_string() const;

 private:
  void add_term(const SphereMonomial& m, const PhaseScalar& c);

  ThetaMode mode_;
  std::map<SphereMonomial, PhaseScalar> terms_;
};

}  // namespace ncg
