#include "bryant/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace bryant {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where + ": expected true or false");
  return j.get<bool>();
}

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return infinity();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected [re, im] or \"inf\"");
}

Complex finite_complex(const json& j, const std::string& where) {
  const Complex z = complex_from(j, where);
  if (is_infinite(z)) throw ConfigError(where + ": must be finite");
  return z;
}

std::pair<double, double> pair_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected a pair of numbers");
  return {number(j[0], where), number(j[1], where)};
}

std::pair<int, int> int_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected a pair of integers");
  return {integer(j[0], where), integer(j[1], where)};
}

Polynomial poly_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected a list of [re, im] coefficients");
  std::vector<Complex> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(finite_complex(j[k], where + "[" + std::to_string(k) + "]"));
  return Polynomial(std::move(c));
}

ordered_json poly_to_json(const Polynomial& p) {
  ordered_json out = ordered_json::array();
  for (Complex c : p.coeffs()) out.push_back(complex_to_json(c));
  return out;
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

ChartConfig chart_from(const json& j, const std::vector<Complex>& punctures, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const json& type = require(j, "type", where);
  if (!type.is_string()) throw ConfigError(where + ".type: expected a string");
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  if (name.empty()) throw ConfigError(where + ": charts need a non-empty name");
  ChartConfig out;
  try {
    if (type == "rect") {
      check_keys(j, where, {"name", "type", "re", "im", "resolution", "lift", "geometry"});
      const auto [re0, re1] = pair_of(require(j, "re", where), where + ".re");
      const auto [im0, im1] = pair_of(require(j, "im", where), where + ".im");
      const auto [nu, nv] = int_pair(require(j, "resolution", where), where + ".resolution");
      out.chart = Chart::rect(name, re0, re1, im0, im1, nu, nv);
      out.chart.lift = true;
    } else if (type == "band") {
      check_keys(j, where, {"name", "type", "end", "radius", "resolution", "lift", "geometry"});
      const Complex end = complex_from(require(j, "end", where), where + ".end");
      bool declared = false;
      for (Complex p : punctures) declared = declared || same_point(p, end, 1e-12);
      if (!declared) throw ConfigError(where + ".end: not a declared puncture");
      const auto [r_core, r_end] = pair_of(require(j, "radius", where), where + ".radius");
      const auto [nu, nv] = int_pair(require(j, "resolution", where), where + ".resolution");
      out.chart = Chart::band(name, end, r_core, r_end, nu, nv);
    } else {
      throw ConfigError(where + ".type: expected \"rect\" or \"band\"");
    }
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (j.contains("lift")) out.chart.lift = boolean(j["lift"], where + ".lift");
  out.geometry = out.chart.kind == ChartKind::Band && !out.chart.lift;
  if (j.contains("geometry")) out.geometry = boolean(j["geometry"], where + ".geometry");
  if (out.geometry && out.chart.kind != ChartKind::Band) throw ConfigError(where + ".geometry: only band charts");
  return out;
}

}  // namespace

ordered_json complex_to_json(Complex z) {
  if (is_infinite(z)) return "inf";
  return ordered_json::array({z.real() + 0.0, z.imag() + 0.0});  // +0.0 folds negative zero
}

PowerRational power_rational_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"alpha", "numer", "denom"});
  const double alpha = j.contains("alpha") ? number(j["alpha"], where + ".alpha") : 0.0;
  const Polynomial P = poly_from(require(j, "numer", where), where + ".numer");
  const Polynomial Q = j.contains("denom") ? poly_from(j["denom"], where + ".denom") : Polynomial::constant(1.0);
  try {
    return PowerRational(alpha, P, Q);
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ordered_json power_rational_to_json(const PowerRational& m) {
  ordered_json out;
  out["alpha"] = m.alpha();
  out["numer"] = poly_to_json(m.numer());
  out["denom"] = poly_to_json(m.denom());
  return out;
}

SurfaceSpec parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  const std::string where = "config";
  check_keys(root, where,
             {"schema", "name", "target", "g", "f", "gauss_map", "punctures", "base_point", "charts", "analysis", "tolerances"});
  if (integer(require(root, "schema", where), "schema") != 1) throw ConfigError("schema: only version 1 is supported");

  SurfaceSpec spec;
  spec.source_text = text;
  const json& name = require(root, "name", where);
  if (!name.is_string()) throw ConfigError("name: expected a string");
  spec.name = name.get<std::string>();

  const json& target = require(root, "target", where);
  if (target == "h3") {
    spec.data.target = TargetSpace::HyperbolicSpace;
  } else if (target == "desitter") {
    spec.data.target = TargetSpace::DeSitterSpace;
  } else {
    throw ConfigError("target: expected \"h3\" or \"desitter\"");
  }
  spec.data.g = power_rational_from_json(require(root, "g", where), "g");
  spec.data.f = power_rational_from_json(require(root, "f", where), "f");
  if (root.contains("gauss_map")) spec.gauss_map = power_rational_from_json(root["gauss_map"], "gauss_map");

  const json& punctures = require(root, "punctures", where);
  if (!punctures.is_array()) throw ConfigError("punctures: expected a list");
  for (std::size_t k = 0; k < punctures.size(); ++k)
    spec.data.punctures.push_back(complex_from(punctures[k], "punctures[" + std::to_string(k) + "]"));

  if (root.contains("base_point")) spec.base_point = finite_complex(root["base_point"], "base_point");
  for (Complex p : spec.data.punctures)
    if (same_point(p, spec.base_point, 1e-12)) throw ConfigError("base_point: lies on a puncture");

  const json& charts = require(root, "charts", where);
  if (!charts.is_array()) throw ConfigError("charts: expected a list");
  std::set<std::string> names;
  for (std::size_t k = 0; k < charts.size(); ++k) {
    ChartConfig c = chart_from(charts[k], spec.data.punctures, "charts[" + std::to_string(k) + "]");
    if (!names.insert(c.chart.name).second) throw ConfigError("charts: duplicate name '" + c.chart.name + "'");
    spec.charts.push_back(std::move(c));
  }

  if (root.contains("analysis")) {
    const json& a = root["analysis"];
    check_keys(a, "analysis",
               {"lift", "immersion", "duality", "geometry", "coverage", "monodromy", "coverage_level", "inject_omitted_count"});
    AnalysisToggles& t = spec.analysis;
    if (a.contains("lift")) t.lift = boolean(a["lift"], "analysis.lift");
    if (a.contains("immersion")) t.immersion = boolean(a["immersion"], "analysis.immersion");
    if (a.contains("duality")) t.duality = boolean(a["duality"], "analysis.duality");
    if (a.contains("geometry")) t.geometry = boolean(a["geometry"], "analysis.geometry");
    if (a.contains("coverage")) t.coverage = boolean(a["coverage"], "analysis.coverage");
    if (a.contains("monodromy")) t.monodromy = boolean(a["monodromy"], "analysis.monodromy");
    if (a.contains("coverage_level")) {
      t.coverage_level = integer(a["coverage_level"], "analysis.coverage_level");
      if (t.coverage_level < 1 || t.coverage_level > 8) throw ConfigError("analysis.coverage_level: expected 1..8");
    }
    if (a.contains("inject_omitted_count"))
      t.inject_omitted_count = integer(a["inject_omitted_count"], "analysis.inject_omitted_count");
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    check_keys(t, "tolerances", {"scale"});
    if (t.contains("scale")) spec.tolerance_scale = number(t["scale"], "tolerances.scale");
    if (!(spec.tolerance_scale > 0.0)) throw ConfigError("tolerances.scale: must be positive");
  }
  return spec;
}

SurfaceSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ordered_json to_json(const SurfaceSpec& spec) {
  ordered_json out;
  out["schema"] = 1;
  out["name"] = spec.name;
  out["target"] = spec.data.target == TargetSpace::HyperbolicSpace ? "h3" : "desitter";
  out["g"] = power_rational_to_json(spec.data.g);
  out["f"] = power_rational_to_json(spec.data.f);
  if (spec.gauss_map) out["gauss_map"] = power_rational_to_json(*spec.gauss_map);
  out["punctures"] = ordered_json::array();
  for (Complex p : spec.data.punctures) out["punctures"].push_back(complex_to_json(p));
  out["base_point"] = complex_to_json(spec.base_point);
  out["charts"] = ordered_json::array();
  for (const ChartConfig& c : spec.charts) {
    ordered_json j;
    j["name"] = c.chart.name;
    if (c.chart.kind == ChartKind::Rect) {
      j["type"] = "rect";
      j["re"] = {c.chart.u0, c.chart.u1};
      j["im"] = {c.chart.v0, c.chart.v1};
    } else {
      j["type"] = "band";
      j["end"] = complex_to_json(c.chart.end);
      j["radius"] = {std::exp(c.chart.sigma * c.chart.u0), std::exp(c.chart.sigma * c.chart.u1)};
    }
    j["resolution"] = {c.chart.nu, c.chart.nv};
    j["lift"] = c.chart.lift;
    j["geometry"] = c.geometry;
    out["charts"].push_back(j);
  }
  const AnalysisToggles& t = spec.analysis;
  out["analysis"] = {{"lift", t.lift},         {"immersion", t.immersion}, {"duality", t.duality},
                     {"geometry", t.geometry}, {"coverage", t.coverage},   {"monodromy", t.monodromy},
                     {"coverage_level", t.coverage_level}};
  if (t.inject_omitted_count) out["analysis"]["inject_omitted_count"] = *t.inject_omitted_count;
  out["tolerances"] = {{"scale", spec.tolerance_scale}};
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace bryant
