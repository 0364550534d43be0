#include "glh/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace glh {

namespace {

std::vector<Check> sorted_checks(const std::vector<Check>& checks) {
  std::vector<Check> out = checks;
  std::stable_sort(out.begin(), out.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
  return out;
}

std::vector<std::pair<std::string, std::string>> sorted_notes(
    const std::vector<std::pair<std::string, std::string>>& notes) {
  auto out = notes;
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", r);
  return buf;
}

Check& Report::add(std::string name, double residual, double tol, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tol;
  c.passed = residual <= tol;  // false for NaN
  c.detail = std::move(detail);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add_flag(std::string name, bool ok, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.passed = ok;
  c.residual = ok ? 0.0 : 1.0;
  c.detail = std::move(detail);
  checks_.push_back(std::move(c));
  return checks_.back();
}

void Report::note(std::string key, std::string value) {
  notes_.emplace_back(std::move(key), std::move(value));
}

void Report::merge(const std::string& prefix, const Report& other) {
  for (Check c : other.checks_) {
    c.name = prefix.empty() ? c.name : prefix + "." + c.name;
    checks_.push_back(std::move(c));
  }
  for (auto [k, v] : other.notes_) {
    notes_.emplace_back(prefix.empty() ? k : prefix + "." + k, std::move(v));
  }
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::find(const std::string& name) const {
  for (const Check& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> Report::failed_names() const {
  std::vector<std::string> out;
  for (const Check& c : sorted_checks(checks_)) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

std::string Report::to_text() const {
  std::string out;
  if (!title_.empty()) out += title_ + "\n";
  for (const Check& c : sorted_checks(checks_)) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name + "  residual=" + format_residual(c.residual);
    if (c.tolerance > 0) out += " tol=" + format_residual(c.tolerance);
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  for (const auto& [k, v] : sorted_notes(notes_)) out += "  " + k + ": " + v + "\n";
  if (!payload_.empty()) out += "payload:\n" + payload_ + "\n";
  out += passed() ? "result: pass\n" : "result: fail\n";
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : sorted_checks(checks_)) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    // JSON has no NaN; encode as a string.
    if (std::isfinite(c.residual)) {
      e["residual"] = c.residual;
    } else {
      e["residual"] = format_residual(c.residual);
    }
    e["tolerance"] = c.tolerance;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sorted_notes(notes_)) notes[k] = v;
  j["notes"] = std::move(notes);
  if (!payload_.empty()) j["payload"] = nlohmann::ordered_json::parse(payload_);
  return j.dump(2) + "\n";
}

}  // namespace glh
