#include "ncg/report.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

std::string to_string(Scope s) {
  switch (s) {
    case Scope::Exact:
      return "exact";
    case Scope::FiniteShadow:
      return "finite-shadow";
    case Scope::RationalShadow:
      return "rational-shadow";
    case Scope::ContinuityEvidence:
      return "continuity-evidence";
  }
  return "exact";
}

CheckRecord& CheckList::add(std::string name, std::string anchor, double residual,
                            double tolerance, Scope scope) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = std::isfinite(residual) && residual < tolerance;
  r.scope = scope;
  records_.push_back(std::move(r));
  return records_.back();
}

CheckRecord& CheckList::add_count(std::string name, std::string anchor, long expected, long actual,
                                  Scope scope) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.residual = std::abs(double(expected - actual));
  r.tolerance = 0.0;
  r.passed = expected == actual;
  r.scope = scope;
  r.integer = true;
  r.expected = expected;
  r.actual = actual;
  records_.push_back(std::move(r));
  return records_.back();
}

CheckRecord& CheckList::add_flag(std::string name, std::string anchor, bool ok, Scope scope,
                                 std::string detail) {
  CheckRecord& r = add_count(std::move(name), std::move(anchor), 1, ok ? 1 : 0, scope);
  r.detail = std::move(detail);
  return r;
}

void CheckList::append(const CheckList& other, const std::string& prefix) {
  for (CheckRecord r : other.records_) {
    if (!prefix.empty()) r.name = prefix + "." + r.name;
    records_.push_back(std::move(r));
  }
}

void CheckList::override_tolerance(double tol) {
  for (auto& r : records_) {
    if (r.integer) continue;
    r.tolerance = tol;
    r.passed = std::isfinite(r.residual) && r.residual < tol;
  }
}

bool CheckList::all_passed() const {
  return std::all_of(records_.begin(), records_.end(), [](const CheckRecord& r) { return r.passed; });
}

const CheckRecord* CheckList::find(const std::string& name) const {
  for (const auto& r : records_)
    if (r.name == name) return &r;
  return nullptr;
}

double CheckList::max_residual() const {
  double worst = 0.0;
  for (const auto& r : records_)
    if (!r.integer) worst = std::max(worst, r.residual);
  return worst;
}

nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j{{"name", r.name},     {"anchor", r.anchor},       {"residual", r.residual},
                   {"tolerance", r.tolerance}, {"passed", r.passed}, {"scope", to_string(r.scope)},
                   {"integer", r.integer}};
  if (r.integer) {
    j["expected"] = r.expected;
    j["actual"] = r.actual;
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::json to_json(const CheckList& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : c.records()) arr.push_back(to_json(r));
  return arr;
}

}  // namespace ncg
