#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace bryant {

inline constexpr const char* kToolName = "bryant_forge";
inline constexpr const char* kToolVersion = "1.0.0";

namespace verdict {
inline constexpr const char* kPass = "PASS";
inline constexpr const char* kFail = "FAIL";
inline constexpr const char* kInfo = "INFO";
inline constexpr const char* kNotApplicable = "not-applicable";
inline constexpr const char* kResolutionBounded = "resolution-bounded";
}  // namespace verdict

struct ReportEntry {
  std::string module;
  std::string quantity;
  nlohmann::ordered_json value;
  std::string tolerance;
  std::string verdict;
};

/// Double rounded to 12 significant digits; non-finite values become strings.
nlohmann::ordered_json number_json(double v);
std::string format_number(double v);

class AnalysisReport {
 public:
  std::string command;
  std::string fixture;
  std::string config_hash;
  std::vector<ReportEntry> entries;

  void add(std::string module, std::string quantity, nlohmann::ordered_json value, std::string tolerance,
           std::string verdict);
  void info(std::string module, std::string quantity, nlohmann::ordered_json value);
  /// PASS when `pass`, FAIL otherwise; the tolerance is recorded as text.
  void check(std::string module, std::string quantity, double value, const std::string& tolerance, bool pass);
  /// value <= limit.
  void check_max(std::string module, std::string quantity, double value, double limit);

  bool passed() const;
  int failures() const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace bryant
