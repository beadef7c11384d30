#include <fstream>
#include <set>
#include <sstream>

#include "bryant/config.hpp"
#include "bryant/pipeline.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bryant;

namespace {

std::string read(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const char* kMinimal = R"({
  "schema": 1, "name": "mini", "target": "h3",
  "g": {"numer": [[0, 0], [1, 0]]},
  "f": {"numer": [[1, 0]]},
  "punctures": ["inf"],
  "charts": [{"name": "core", "type": "rect", "re": [-1, 1], "im": [-1, 1], "resolution": [9, 9]}]
})";

}  // namespace

TEST_CASE("configs round-trip through the canonical form") {
  for (const char* name : {"horosphere", "enneper-cousin", "catenoid-cousin-dual", "elliptic-catenoid-face",
                           "irregular-end-synthetic"}) {
    const SurfaceSpec a = load_config(testing::fixture(name));
    const std::string once = to_json(a).dump();
    const SurfaceSpec b = parse_config(once);
    CHECK(to_json(b).dump() == once);
    CHECK(b.charts.size() == a.charts.size());
    CHECK(b.data.punctures.size() == a.data.punctures.size());
  }
}

TEST_CASE("defaults of a minimal config") {
  const SurfaceSpec s = parse_config(kMinimal);
  CHECK(s.name == "mini");
  CHECK(s.data.target == TargetSpace::HyperbolicSpace);
  CHECK(s.charts.at(0).chart.lift);
  CHECK(!s.charts.at(0).geometry);
  CHECK(s.tolerance_scale == 1.0);
  CHECK(!s.gauss_map);
  CHECK(s.analysis.coverage_level == 4);
}

TEST_CASE("unknown keys are rejected at every level") {
  auto with = [](const std::string& from, const std::string& to) {
    std::string t = kMinimal;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(parse_config(with("\"schema\": 1", "\"schema\": 1, \"extra\": 0")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("\"numer\": [[1, 0]]", "\"numer\": [[1, 0]], \"beta\": 1")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("\"resolution\": [9, 9]", "\"resolution\": [9, 9], \"colour\": 1")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("\"schema\": 1", "\"schema\": 2")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("\"h3\"", "\"h4\"")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("\"type\": \"rect\"", "\"type\": \"disk\"")), ConfigError);
  // the default base point 0 would sit on the new puncture
  CHECK_THROWS_AS(parse_config(with("[\"inf\"]", "[\"inf\", [0, 0]]")), ConfigError);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_config("{\n  \"schema\": 1,\n  \"name\": ]\n}");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("config hash") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("report numbers use twelve significant digits") {
  CHECK(number_json(1.0 / 3.0).get<double>() == 0.333333333333);
  CHECK(number_json(-0.0).dump() == "0.0");
  CHECK(number_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number_json(std::nan("")) == "nan");
  CHECK(format_number(1e-9) == "1e-09");
}

TEST_CASE("report layout") {
  AnalysisReport r;
  r.command = "analyze";
  r.fixture = "x";
  r.config_hash = "0";
  r.info("m", "q", 1);
  r.check_max("m", "small", 0.5, 1.0);
  CHECK(r.passed());
  r.check("m", "bad", 2.0, "== 1", false);
  CHECK(r.failures() == 1);
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema", "tool", "version", "command", "fixture", "config_hash", "entries", "failures",
                                         "verdict"});
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"] == "FAIL");
}

TEST_CASE("every fixture reaches every module") {
  const std::set<std::string> modules = {"bryant_data", "null_lift", "immersion", "duality", "geometry", "coverage"};
  for (const char* name : {"horosphere", "enneper-cousin", "catenoid-cousin-dual", "elliptic-catenoid-face",
                           "irregular-end-synthetic"}) {
    const std::string text = read(testing::fixture(name));
    const AnalysisReport r = run_analyze(parse_config(text));
    std::set<std::string> seen;
    for (const ReportEntry& e : r.entries) seen.insert(e.module);
    for (const std::string& m : modules) CHECK_MESSAGE(seen.count(m) == 1, name, " misses ", m);
    CHECK_MESSAGE(r.passed(), name);
    CHECK(r.to_json().dump() == run_analyze(parse_config(text)).to_json().dump());
  }
}

TEST_CASE("analysis highlights") {
  const auto find = [](const AnalysisReport& r, const std::string& q) -> const ReportEntry& {
    for (const ReportEntry& e : r.entries)
      if (e.quantity == q) return e;
    throw std::runtime_error("missing entry " + q);
  };
  const AnalysisReport cat = run_analyze(load_config(testing::fixture("catenoid-cousin-dual")));
  const ReportEntry& oss = find(cat, "osserman inequality");
  CHECK(oss.verdict == "PASS");
  CHECK(std::abs(oss.value["margin"].get<double>()) <= 0.05);
  CHECK(find(cat, "omitted count").value == 2);

  const AnalysisReport horo = run_analyze(load_config(testing::fixture("horosphere")));
  CHECK(find(horo, "mode").value == "constant-map");
  CHECK(find(horo, "picard verdict").value.get<std::string>().find("horosphere") != std::string::npos);

  const AnalysisReport enn = run_analyze(load_config(testing::fixture("enneper-cousin")));
  CHECK(find(enn, "total curvature").value.get<double>() == doctest::Approx(4 * kPi).epsilon(0.02));
  CHECK(find(enn, "end-inf: curvature decay slope").value.get<double>() <= -2.0);
  CHECK(find(enn, "end-inf: volume growth exponent (top decade)").value.get<double>() == doctest::Approx(2.0).epsilon(0.1));
  CHECK(find(enn, "end-inf: parabolicity integral").value["slope"].get<double>() > 0.0);
}

TEST_CASE("coverage command") {
  SurfaceSpec spec = load_config(testing::fixture("catenoid-cousin-dual"));
  CHECK(run_coverage(spec).passed());
  spec.analysis.inject_omitted_count = 3;
  CHECK(!run_coverage(spec).passed());
  CHECK(run_coverage(load_config(testing::fixture("horosphere"))).passed());
}
