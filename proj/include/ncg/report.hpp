#pragma once

// Check records shared by every verification routine and the CLI.

#include <string>
#include <vector>

#include "json.hpp"

namespace ncg {

enum class Scope { Exact, FiniteShadow, RationalShadow, ContinuityEvidence };

std::string to_string(Scope s);

struct CheckRecord {
  std::string name;
  /// The identity being checked, written out.
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  Scope scope = Scope::Exact;
  /// Integer records compare counts exactly and ignore tolerance overrides.
  bool integer = false;
  long expected = 0;
  long actual = 0;
  std::string detail;
};

class CheckList {
 public:
  /// Passes when residual < tolerance.
  CheckRecord& add(std::string name, std::string anchor, double residual, double tolerance,
                   Scope scope = Scope::FiniteShadow);
  CheckRecord& add_count(std::string name, std::string anchor, long expected, long actual,
                         Scope scope = Scope::Exact);
  CheckRecord& add_flag(std::string name, std::string anchor, bool ok,
                        Scope scope = Scope::FiniteShadow, std::string detail = {});

  void append(const CheckList& other, const std::string& prefix = {});
  /// Re-evaluates every residual record against a single tolerance.
  void override_tolerance(double tol);

  bool all_passed() const;
  const std::vector<CheckRecord>& records() const { return records_; }
  const CheckRecord* find(const std::string& name) const;
  double max_residual() const;

 private:
  std::vector<CheckRecord> records_;
};

inline constexpr const char* kReportSchema = "ncgauge.report/1";

nlohmann::json to_json(const CheckRecord& r);
nlohmann::json to_json(const CheckList& c);

}  // namespace ncg
