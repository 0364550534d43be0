#pragma once

// Named pass/fail checks with residuals, shared by every verification entry
// point. Output is sorted by check name so reports are reproducible.

#include <string>
#include <vector>

namespace glh {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;  // where the worst residual sits, if anywhere
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }

  // Passes iff residual <= tol (NaN fails).
  Check& add(std::string name, double residual, double tol, std::string detail = {});
  Check& add_flag(std::string name, bool ok, std::string detail = {});
  // Informational key/value line; does not affect the verdict.
  void note(std::string key, std::string value);
  // Appends every check of other with "prefix." prepended.
  void merge(const std::string& prefix, const Report& other);
  // Structured result (a JSON document) emitted alongside the checks.
  void set_payload(std::string json) { payload_ = std::move(json); }
  const std::string& payload() const { return payload_; }

  bool passed() const;
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  std::vector<std::string> failed_names() const;
  const std::vector<std::pair<std::string, std::string>>& notes() const { return notes_; }

  std::string to_text() const;
  std::string to_json() const;

 private:
  std::string title_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::string payload_;
};

// "%.6e" rendering used in reports.
std::string format_residual(double r);

}  // namespace glh
