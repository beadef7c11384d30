#include "bryant/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bryant {

using nlohmann::ordered_json;

nlohmann::ordered_json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

std::string format_number(double v) {
  const ordered_json j = number_json(v);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

void AnalysisReport::add(std::string module, std::string quantity, ordered_json value, std::string tolerance,
                         std::string verdict) {
  entries.push_back({std::move(module), std::move(quantity), std::move(value), std::move(tolerance), std::move(verdict)});
}

void AnalysisReport::info(std::string module, std::string quantity, ordered_json value) {
  add(std::move(module), std::move(quantity), std::move(value), "", verdict::kInfo);
}

void AnalysisReport::check(std::string module, std::string quantity, double value, const std::string& tolerance,
                           bool pass) {
  add(std::move(module), std::move(quantity), number_json(value), tolerance, pass ? verdict::kPass : verdict::kFail);
}

void AnalysisReport::check_max(std::string module, std::string quantity, double value, double limit) {
  check(std::move(module), std::move(quantity), value, "<= " + format_number(limit), value <= limit);
}

int AnalysisReport::failures() const {
  int n = 0;
  for (const ReportEntry& e : entries) n += e.verdict == verdict::kFail;
  return n;
}

bool AnalysisReport::passed() const { return failures() == 0; }

ordered_json AnalysisReport::to_json() const {
  ordered_json out;
  out["schema"] = 1;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["command"] = command;
  out["fixture"] = fixture;
  out["config_hash"] = config_hash;
  out["entries"] = ordered_json::array();
  for (const ReportEntry& e : entries) {
    ordered_json j;
    j["module"] = e.module;
    j["quantity"] = e.quantity;
    j["value"] = e.value;
    j["tolerance"] = e.tolerance;
    j["verdict"] = e.verdict;
    out["entries"].push_back(j);
  }
  out["failures"] = failures();
  out["verdict"] = passed() ? verdict::kPass : verdict::kFail;
  return out;
}

}  // namespace bryant
