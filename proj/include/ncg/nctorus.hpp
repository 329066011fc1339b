#pragma once

// The noncommutative 2-torus on finitely supported Fourier coefficients.
// Basis U1^m U2^n (U1 to the left). The phase t = exp(2 pi i theta) is either a
// formal variable or an exact primitive root of unity.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncg/numerics.hpp"

namespace ncg {

struct ThetaMode {
  enum class Kind { Symbolic, Rational };
  Kind kind = Kind::Symbolic;
  int p = 0;
  int q = 1;

  static ThetaMode symbolic() { return {}; }
  /// Throws BadParameters unless q >= 1 and gcd(p, q) = 1.
  static ThetaMode rational(int p, int q);

  bool is_rational() const { return kind == Kind::Rational; }
  /// exp(2 pi i p / q); ModeMismatch in symbolic mode.
  cplx zeta() const;
  std::string describe() const;
  bool operator==(const ThetaMode&) const = default;
};

/// sum_k c_k t^k with integer exponents (reduced mod q in rational mode).
class PhaseScalar {
 public:
  explicit PhaseScalar(ThetaMode mode = {}) : mode_(mode) {}
  PhaseScalar(cplx c, ThetaMode mode);
  static PhaseScalar t_power(int k, ThetaMode mode, cplx c = 1.0);

  ThetaMode mode() const { return mode_; }
  const std::map<int, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx coefficient(int k) const;

  PhaseScalar& operator+=(const PhaseScalar& o);
  PhaseScalar& operator-=(const PhaseScalar& o);
  PhaseScalar& operator*=(cplx c);
  friend PhaseScalar operator+(PhaseScalar a, const PhaseScalar& b) { return a += b; }
  friend PhaseScalar operator-(PhaseScalar a, const PhaseScalar& b) { return a -= b; }
  friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b);
  friend PhaseScalar operator*(PhaseScalar a, cplx c) { return a *= c; }
  friend PhaseScalar operator*(cplx c, PhaseScalar a) { return a *= c; }

  /// conj(c_k) t^{-k}.
  PhaseScalar conj() const;
  /// Multiply by t^k.
  PhaseScalar shifted(int k) const;

  /// Value at the mode's root of unity (ModeMismatch when symbolic).
  cplx value() const;
  /// Value with t replaced by the given number.
  cplx value_at(cplx t) const;

  /// Largest coefficient difference; ModeMismatch for different modes.
  static double distance(const PhaseScalar& a, const PhaseScalar& b);
  std::string to_string() const;

 private:
  int reduce(int k) const;
  void add_term(int k, cplx c);

  ThetaMode mode_;
  std::map<int, cplx> terms_;
};

/// Pruning threshold for coefficients.
inline constexpr double kCoefficientFloor = 1e-14;

class TorusElement {
 public:
  using Key = std::pair<int, int>;

  explicit TorusElement(ThetaMode mode = {}) : mode_(mode) {}
  static TorusElement one(ThetaMode mode);
  static TorusElement monomial(int m, int n, ThetaMode mode, cplx c = 1.0);
  static TorusElement monomial(int m, int n, const PhaseScalar& c);
  static TorusElement u1(ThetaMode mode) { return monomial(1, 0, mode); }
  static TorusElement u2(ThetaMode mode) { return monomial(0, 1, mode); }

  ThetaMode mode() const { return mode_; }
  const std::map<Key, PhaseScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PhaseScalar coefficient(int m, int n) const;

  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement& operator*=(const PhaseScalar& c);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
  friend TorusElement operator*(TorusElement a, cplx c);
  friend TorusElement operator*(cplx c, TorusElement a) { return std::move(a) * c; }
  friend TorusElement operator*(const PhaseScalar& c, TorusElement a) { return a *= c; }

  /// Largest coefficient difference (compared by value in rational mode).
  static double distance(const TorusElement& a, const TorusElement& b);
  std::string to_string() const;

 private:
  void add_term(Key k, const PhaseScalar& c);

  ThetaMode mode_;
  std::map<Key, PhaseScalar> terms_;
};

/// (U1^a U2^b)(U1^c U2^d) = t^{b c} U1^{a+c} U2^{b+d}. ModeMismatch on mixed modes.
TorusElement torus_mul(const TorusElement& a, const TorusElement& b);
/// (c U1^m U2^n)* = conj(c) t^{m n} U1^{-m} U2^{-n}.
TorusElement torus_adjoint(const TorusElement& a);

/// Unitaries (R1, R2) of size q with R2 R1 = zeta R1 R2 and R_i^q = I.
std::pair<CMatrix, CMatrix> clock_shift(int q, int p);

/// U1 -> z1 R1, U2 -> z2 R2. ModeMismatch for symbolic elements, NotOnTorus
/// unless |z1| = |z2| = 1 within 1e-12.
CMatrix torus_rep(const TorusElement& a, cplx z1, cplx z2);

/// Coefficient of the identity monomial.
PhaseScalar trace_state(const TorusElement& a);

/// tau(u) / |tau(u)| in rational mode; VanishingTrace when |tau(u)| < 1e-8.
cplx phase_map(const TorusElement& u);
/// Same with t = exp(2 pi i theta) substituted into a symbolic element.
cplx phase_map(const TorusElement& u, double theta);

/// Monomials U1^m U2^n with |m|, |n| <= d commuting exactly with U1 and U2.
std::vector<TorusElement::Key> center_monomials(ThetaMode mode, int d);
std::vector<TorusElement::Key> symbolic_center(int d);

/// sum_{k <= order} x^k / k!.
TorusElement torus_exp(const TorusElement& x, int order);

}  // namespace ncg
