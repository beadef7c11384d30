#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bryant/bryant_data.hpp"
#include "bryant/chart.hpp"
#include "json.hpp"

namespace bryant {

/// Malformed or inconsistent configuration. Parse errors carry a position.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChartConfig {
  Chart chart;
  bool geometry = false;  // run intrinsic analysis on this band (defaults to !lift)
};

struct AnalysisToggles {
  bool lift = true;
  bool immersion = true;
  bool duality = true;
  bool geometry = true;
  bool coverage = true;
  bool monodromy = true;
  int coverage_level = 4;
  std::optional<int> inject_omitted_count;  // test hook: overrides the coverage count
};

struct SurfaceSpec {
  std::string name;
  BryantData data;
  std::optional<PowerRational> gauss_map;
  Complex base_point = 0.0;
  std::vector<ChartConfig> charts;
  AnalysisToggles analysis;
  double tolerance_scale = 1.0;
  std::string source_text;  // raw document, hashed into reports
};

/// Parses a schema-1 document; unknown keys are rejected at every level.
SurfaceSpec parse_config(const std::string& text);
SurfaceSpec load_config(const std::string& path);
/// Canonical JSON form; parse_config(to_json(s).dump()) reproduces s.
nlohmann::ordered_json to_json(const SurfaceSpec& spec);

nlohmann::ordered_json complex_to_json(Complex z);
PowerRational power_rational_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::ordered_json power_rational_to_json(const PowerRational& m);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace bryant
