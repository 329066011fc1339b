#include "ncg/sphere.hpp"

#include <cmath>
#include <sstream>

namespace ncg {

SphereElement SphereElement::one(ThetaMode mode) { return monomial({}, mode); }

SphereElement SphereElement::monomial(const SphereMonomial& m, const PhaseScalar& c) {
  if (m.a < 0 || m.ad < 0 || m.b < 0 || m.bd < 0 || m.c < 0)
    throw BadParameters("sphere monomials have nonnegative exponents");
  SphereElement e(c.mode());
  e.add_term(m, c);
  return e;
}

SphereElement SphereElement::monomial(const SphereMonomial& m, ThetaMode mode, cplx c) {
  return monomial(m, PhaseScalar(c, mode));
}

bool SphereElement::uses_x() const {
  for (const auto& [m, c] : terms_)
    if (m.c > 0) return true;
  return false;
}

void SphereElement::add_term(const SphereMonomial& m, const PhaseScalar& c) {
  if (!(c.mode() == mode_)) throw ModeMismatch(mode_.describe() + " vs " + c.mode().describe());
  auto negligible = [&](const PhaseScalar& s) {
    return s.is_zero() || (mode_.is_rational() && std::abs(s.value()) < kCoefficientFloor);
  };
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!negligible(c)) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (negligible(it->second)) terms_.erase(it);
}

SphereElement& SphereElement::operator+=(const SphereElement& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " + " + o.mode_.describe());
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SphereElement& SphereElement::operator-=(const SphereElement& o) {
  if (!(o.mode_ == mode_)) throw ModeMismatch(mode_.describe() + " - " + o.mode_.describe());
  for (const auto& [m, c] : o.terms_) add_term(m, c * cplx(-1.0));
  return *this;
}

SphereElement operator*(const SphereElement& x, const SphereElement& y) {
  if (!(x.mode_ == y.mode_)) throw ModeMismatch(x.mode_.describe() + " * " + y.mode_.describe());
  SphereElement out(x.mode_);
  for (const auto& [m, c] : x.terms_)
    for (const auto& [n, d] : y.terms_) {
      // beta-block of m passes the alpha-block of n.
      const int phase = (m.b - m.bd) * (n.a - n.ad);
      const SphereMonomial r{m.a + n.a, m.ad + n.ad, m.b + n.b, m.bd + n.bd, m.c + n.c};
      out.add_term(r, (c * d).shifted(phase));
    }
  return out;
}

SphereElement operator*(SphereElement a, cplx c) {
  SphereElement out(a.mode_);
  for (const auto& [m, v] : a.terms_) out.add_term(m, v * c);
  return out;
}

SphereElement operator*(const PhaseScalar& c, const SphereElement& a) {
  SphereElement out(a.mode_);
  for (const auto& [m, v] : a.terms_) out.add_term(m, c * v);
  return out;
}

SphereElement SphereElement::adjoint() const {
  SphereElement out(mode_);
  for (const auto& [m, c] : terms_) {
    const SphereMonomial r{m.ad, m.a, m.bd, m.b, m.c};
    out.add_term(r, c.conj().shifted((m.b - m.bd) * (m.a - m.ad)));
  }
  return out;
}

SphereElement SphereElement::torus_action(cplx w1, cplx w2) const {
  SphereElement out(mode_);
  for (const auto& [m, c] : terms_) {
    const cplx f = std::pow(w1, m.a - m.ad) * std::pow(w2, m.b - m.bd);
    out.add_term(m, c * f);
  }
  return out;
}

double SphereElement::distance(const SphereElement& a, const SphereElement& b) {
  const SphereElement d = a - b;
  double worst = 0.0;
  for (const auto& [m, c] : d.terms_) {
    if (d.mode_.is_rational()) {
      worst = std::max(worst, std::abs(c.value()));
      continue;
    }
    for (const auto& [k, v] : c.terms()) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::string SphereElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  auto letter = [&](const char* name, int e) {
    if (e > 0) os << "*" << name << (e > 1 ? "^" + std::to_string(e) : "");
  };
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.to_string() << "]";
    letter("a", m.a);
    letter("ad", m.ad);
    letter("b", m.b);
    letter("bd", m.bd);
    letter("x", m.c);
  }
  return os.str();
}

}  // namespace ncg
