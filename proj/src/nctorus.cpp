#include "ncg/nctorus.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ncg {

ThetaMode ThetaMode::rational(int p, int q) {
  if (q < 1) throw BadParameters("denominator q must be at least 1, got " + std::to_string(q));
  if (std::gcd(p, q) != 1)
    throw BadParameters("p/q = " + std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
  ThetaMode m;
  m.kind = Kind::Rational;
  m.q = q;
  m.p = ((p % q) + q) % q;
  return m;
}

cplx ThetaMode::zeta() const {
  if (!is_rational()) throw ModeMismatch("a symbolic phase has no numerical value");
  return std::polar(1.0, 2.0 * M_PI * p / q);
}

std::string ThetaMode::describe() const {
  if (!is_rational()) return "symbolic";
  return "rational(" + std::to_string(p) + "/" + std::to_string(q) + ")";
}

// PhaseScalar

PhaseScalar::PhaseScalar(cplx c, ThetaMode mode) : mode_(mode) { add_term(0, c); }

PhaseScalar PhaseScalar::t_power(int k, ThetaMode mode, cplx c) {
  PhaseScalar s(mode);
  s.add_term(k, c);
  return s;
}

int PhaseScalar::reduce(int k) const {
  if (!mode_.is_rational()) return k;
  return ((k % mode_.q) + mode_.q) % mode_.q;
}

void PhaseScalar::add_term(int k, cplx c) {
  const int e = reduce(k);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (std::abs(c) >= kCoefficientFloor) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) < kCoefficientFloor) terms_.erase(it);
}

cplx PhaseScalar::coefficient(int k) const {
  auto it = terms_.find(reduce(k));
  return it == terms_.end() ? cplx{} : it->second;
}

PhaseScalar& PhaseScalar::operator+=(const PhaseScalar& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " + " + o.mode_.describe());
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PhaseScalar& PhaseScalar::operator-=(const PhaseScalar& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " - " + o.mode_.describe());
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PhaseScalar& PhaseScalar::operator*=(cplx c) {
  PhaseScalar out(mode_);
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  *this = std::move(out);
  return *this;
}

PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
  if (!(a.mode_ == b.mode_)) throw ModeMismatch(a.mode_.describe() + " * " + b.mode_.describe());
  PhaseScalar out(a.mode_);
  for (const auto& [i, x] : a.terms_)
    for (const auto& [j, y] : b.terms_) out.add_term(i + j, x * y);
  return out;
}

PhaseScalar PhaseScalar::conj() const {
  PhaseScalar out(mode_);
  for (const auto& [k, c] : terms_) out.add_term(-k, std::conj(c));
  return out;
}

PhaseScalar PhaseScalar::shifted(int k) const {
  PhaseScalar out(mode_);
  for (const auto& [e, c] : terms_) out.add_term(e + k, c);
  return out;
}

cplx PhaseScalar::value() const { return value_at(mode_.zeta()); }

cplx PhaseScalar::value_at(cplx t) const {
  cplx s = 0.0;
  for (const auto& [k, c] : terms_) s += c * std::pow(t, k);
  return s;
}

double PhaseScalar::distance(const PhaseScalar& a, const PhaseScalar& b) {
  const PhaseScalar d = a - b;
  double worst = 0.0;
  for (const auto& [k, c] : d.terms_) worst = std::max(worst, std::abs(c));
  return worst;
}

std::string PhaseScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k != 0) os << "*t^" << k;
  }
  return os.str();
}

// TorusElement

TorusElement TorusElement::one(ThetaMode mode) { return monomial(0, 0, mode); }

TorusElement TorusElement::monomial(int m, int n, ThetaMode mode, cplx c) {
  return monomial(m, n, PhaseScalar(c, mode));
}

TorusElement TorusElement::monomial(int m, int n, const PhaseScalar& c) {
  TorusElement e(c.mode());
  e.add_term({m, n}, c);
  return e;
}

void TorusElement::add_term(Key k, const PhaseScalar& c) {
  if (!(c.mode() == mode_)) throw ModeMismatch(mode_.describe() + " vs " + c.mode().describe());
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.is_zero() && !(mode_.is_rational() && std::abs(c.value()) < kCoefficientFloor))
      terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero() ||
      (mode_.is_rational() && std::abs(it->second.value()) < kCoefficientFloor))
    terms_.erase(it);
}

PhaseScalar TorusElement::coefficient(int m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? PhaseScalar(mode_) : it->second;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " + " + o.mode_.describe());
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " - " + o.mode_.describe());
  for (const auto& [k, c] : o.terms_) add_term(k, c * cplx(-1.0));
  return *this;
}

TorusElement& TorusElement::operator*=(const PhaseScalar& c) {
  TorusElement out(mode_);
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  *this = std::move(out);
  return *this;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) { return torus_mul(a, b); }

TorusElement operator*(TorusElement a, cplx c) {
  TorusElement out(a.mode_);
  for (const auto& [k, v] : a.terms_) out.add_term(k, v * c);
  return out;
}

double TorusElement::distance(const TorusElement& a, const TorusElement& b) {
  const TorusElement d = a - b;
  double worst = 0.0;
  for (const auto& [k, c] : d.terms_) {
    if (d.mode_.is_rational()) {
      worst = std::max(worst, std::abs(c.value()));
      continue;
    }
    for (const auto& [e, v] : c.terms()) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::string TorusElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.to_string() << "]*U1^" << k.first << "*U2^" << k.second;
  }
  return os.str();
}

TorusElement torus_mul(const TorusElement& a, const TorusElement& b) {
  if (!(a.mode() == b.mode())) throw ModeMismatch(a.mode().describe() + " * " + b.mode().describe());
  TorusElement out(a.mode());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out += TorusElement::monomial(ka.first + kb.first, ka.second + kb.second,
                                    (ca * cb).shifted(ka.second * kb.first));
  return out;
}

TorusElement torus_adjoint(const TorusElement& a) {
  TorusElement out(a.mode());
  for (const auto& [k, c] : a.terms())
    out += TorusElement::monomial(-k.first, -k.second, c.conj().shifted(k.first * k.second));
  return out;
}

std::pair<CMatrix, CMatrix> clock_shift(int q, int p) {
  const ThetaMode mode = ThetaMode::rational(p, q);
  const cplx zeta = mode.zeta();
  CMatrix clock = CMatrix::Zero(q, q);
  CMatrix shift = CMatrix::Zero(q, q);
  for (int k = 0; k < q; ++k) {
    clock(k, k) = std::polar(1.0, 2.0 * M_PI * double(mode.p) * k / q);
    shift((k + 1) % q, k) = 1.0;
  }
  const std::pair<CMatrix, CMatrix> candidates[2] = {{clock, shift}, {shift, clock}};
  for (const auto& [r1, r2] : candidates)
    if ((r2 * r1 - zeta * r1 * r2).norm() < 1e-12) return {r1, r2};
  throw BadParameters("neither clock/shift assignment satisfies R2 R1 = zeta R1 R2 for q = " +
                      std::to_string(q));
}

namespace {

std::vector<CMatrix> cyclic_powers(const CMatrix& r, int q) {
  std::vector<CMatrix> out{identity(q)};
  for (int k = 1; k < q; ++k) out.push_back(out.back() * r);
  return out;
}

}  // namespace

CMatrix torus_rep(const TorusElement& a, cplx z1, cplx z2) {
  const ThetaMode mode = a.mode();
  if (!mode.is_rational()) throw ModeMismatch("symbolic torus elements cannot be represented");
  if (std::abs(std::abs(z1) - 1.0) > 1e-12 || std::abs(std::abs(z2) - 1.0) > 1e-12)
    throw NotOnTorus("torus coordinates must have modulus 1");
  const int q = mode.q;
  const auto [r1, r2] = clock_shift(q, mode.p);
  const auto p1 = cyclic_powers(r1, q);
  const auto p2 = cyclic_powers(r2, q);
  CMatrix out = CMatrix::Zero(q, q);
  for (const auto& [k, c] : a.terms()) {
    const int m = ((k.first % q) + q) % q;
    const int n = ((k.second % q) + q) % q;
    out += (c.value() * std::pow(z1, k.first) * std::pow(z2, k.second)) * (p1[m] * p2[n]);
  }
  return out;
}

PhaseScalar trace_state(const TorusElement& a) { return a.coefficient(0, 0); }

namespace {

cplx normalize_phase(cplx tau) {
  if (std::abs(tau) < 1e-8)
    throw VanishingTrace("|tau(u)| = " + std::to_string(std::abs(tau)) +
                         ", the phase map is undefined");
  return tau / std::abs(tau);
}

}  // namespace

cplx phase_map(const TorusElement& u) { return normalize_phase(trace_state(u).value()); }

cplx phase_map(const TorusElement& u, double theta) {
  return normalize_phase(trace_state(u).value_at(std::polar(1.0, 2.0 * M_PI * theta)));
}

std::vector<TorusElement::Key> center_monomials(ThetaMode mode, int d) {
  std::vector<TorusElement::Key> out;
  const TorusElement g1 = TorusElement::u1(mode);
  const TorusElement g2 = TorusElement::u2(mode);
  for (int m = -d; m <= d; ++m)
    for (int n = -d; n <= d; ++n) {
      const TorusElement x = TorusElement::monomial(m, n, mode);
      if ((g1 * x - x * g1).is_zero() && (g2 * x - x * g2).is_zero()) out.emplace_back(m, n);
    }
  return out;
}

std::vector<TorusElement::Key> symbolic_center(int d) {
  return center_monomials(ThetaMode::symbolic(), d);
}

TorusElement torus_exp(const TorusElement& x, int order) {
  TorusElement sum = TorusElement::one(x.mode());
  TorusElement term = sum;
  for (int k = 1; k <= order; ++k) {
    term = torus_mul(term, x) * cplx(1.0 / k);
    sum += term;
  }
  return sum;
}

}  // namespace ncg
