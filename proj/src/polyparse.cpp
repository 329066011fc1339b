#include "ncg/polyparse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

namespace ncg {

namespace {

template <class Elem>
class Parser {
 public:
  Parser(std::string_view text, ThetaMode mode) : text_(text), mode_(mode) {}

  Elem parse() {
    Elem e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Elem one() const { return Elem::one(mode_); }

  Elem expr() {
    skip();
    Elem acc(mode_);
    if (accept('-'))
      acc -= term();
    else
      acc += term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Elem term() {
    Elem acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  int integer() {
    skip();
    bool neg = accept('-');
    skip();
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    int v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail("exponent out of range");
    return neg ? -v : v;
  }

  Elem factor() {
    skip();
    const size_t start = pos_;
    std::string name;
    Elem base = primary(name);
    if (!accept('^')) return name.empty() ? base : named_power(name, 1);
    const int k = integer();
    if (!name.empty()) return named_power(name, k);
    if (k < 0) {
      pos_ = start;
      fail("negative power of a non-monomial");
    }
    Elem acc = one();
    for (int i = 0; i < k; ++i) acc = acc * base;
    return acc;
  }

  // Parses a primary. Identifiers are returned through `name` so the power can
  // be applied symbolically.
  Elem primary(std::string& name) {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      if (id == "i") return one() * cplx(0.0, 1.0);
      if (!known(id)) {
        pos_ = start;
        fail("unknown identifier '" + id + "'");
      }
      name = id;
      return one();
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Elem number() {
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string lit(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(lit.c_str(), &end);
    if (end != lit.c_str() + lit.size()) {
      pos_ = start;
      fail("malformed number '" + lit + "'");
    }
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return one() * cplx(0.0, v);
    }
    return one() * cplx(v, 0.0);
  }

  bool known(const std::string& id) const;
  Elem named_power(const std::string& id, int k);

  std::string_view text_;
  ThetaMode mode_;
  size_t pos_ = 0;
};

template <>
bool Parser<TorusElement>::known(const std::string& id) const {
  return id == "U1" || id == "U2" || id == "t";
}

template <>
TorusElement Parser<TorusElement>::named_power(const std::string& id, int k) {
  if (id == "U1") return TorusElement::monomial(k, 0, mode_);
  if (id == "U2") return TorusElement::monomial(0, k, mode_);
  return PhaseScalar::t_power(k, mode_) * one();
}

template <>
bool Parser<SphereElement>::known(const std::string& id) const {
  return id == "a" || id == "ad" || id == "b" || id == "bd" || id == "x" || id == "t";
}

template <>
SphereElement Parser<SphereElement>::named_power(const std::string& id, int k) {
  if (id == "t") return PhaseScalar::t_power(k, mode_) * one();
  if (k < 0) fail("negative power of '" + id + "'");
  SphereMonomial m;
  if (id == "a") m.a = k;
  if (id == "ad") m.ad = k;
  if (id == "b") m.b = k;
  if (id == "bd") m.bd = k;
  if (id == "x") m.c = k;
  return SphereElement::monomial(m, mode_);
}

}  // namespace

TorusElement parse_torus(std::string_view text, ThetaMode mode) {
  return Parser<TorusElement>(text, mode).parse();
}

SphereElement parse_sphere(std::string_view text, ThetaMode mode) {
  return Parser<SphereElement>(text, mode).parse();
}

}  // namespace ncg
