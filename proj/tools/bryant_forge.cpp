// bryant_forge: validate, synthesize and analyze CMC-1 surfaces from JSON configs.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "bryant/config.hpp"
#include "bryant/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericError = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string chart;
  double tolerance_scale = 0.0;
};

void emit(const bryant::AnalysisReport& report, const std::string& path) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw bryant::ConfigError("cannot write report to " + path);
  f << text;
}

std::string mesh_path(const std::string& out, const std::string& chart, bool several) {
  if (!several) return out;
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "-" + chart;
  return out.substr(0, dot) + "-" + chart + out.substr(dot);
}

int run(const std::string& command, const Options& opt) {
  bryant::SurfaceSpec spec = bryant::load_config(opt.config);
  if (opt.tolerance_scale > 0.0) spec.tolerance_scale = opt.tolerance_scale;

  bryant::AnalysisReport report;
  if (command == "validate") {
    report = bryant::run_validate(spec);
    emit(report, opt.out);
  } else if (command == "synth") {
    if (opt.out.empty()) throw bryant::ConfigError("synth needs --out PATH for the mesh");
    bryant::SynthResult res = bryant::run_synth(spec, opt.chart);
    for (const bryant::MeshOutput& m : res.meshes) {
      const std::string path = mesh_path(opt.out, m.chart, res.meshes.size() > 1);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw bryant::ConfigError("cannot write mesh to " + path);
      bryant::write_ply(m.mesh, f);
      res.report.info("cli", "mesh written", path);
    }
    report = std::move(res.report);
    emit(report, "");
  } else if (command == "analyze") {
    report = bryant::run_analyze(spec);
    emit(report, opt.out);
  } else {
    report = bryant::run_coverage(spec);
    emit(report, opt.out);
  }
  for (const bryant::ReportEntry& e : report.entries)
    if (e.verdict == bryant::verdict::kFail) std::cerr << "FAIL " << e.module << ": " << e.quantity << "\n";
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis and analysis of CMC-1 surfaces in hyperbolic and de Sitter space"};
  app.require_subcommand(1);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check the (g, f) data: pole orders, puncture set, curvature sign"},
      {"synth", "lift and immerse every lift chart, write PLY meshes (--out) and the report"},
      {"analyze", "run every enabled check and write the consolidated report"},
      {"coverage", "omitted values of the hyperbolic Gauss map and the Picard-type verdict"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", opt.config, "surface config (JSON)")->required();
    sub->add_option("--out", opt.out, "output path (mesh for synth, report otherwise)");
    sub->add_option("--chart", opt.chart, "restrict synth to one chart");
    sub->add_option("--tolerance-scale", opt.tolerance_scale, "multiply every check tolerance")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const bryant::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const bryant::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const bryant::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
}
