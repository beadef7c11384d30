#pragma once

#include <string>
#include <vector>

#include "bryant/config.hpp"
#include "bryant/immersion.hpp"
#include "bryant/report.hpp"

namespace bryant {

struct MeshOutput {
  std::string chart;
  MeshSurface mesh;
};

struct SynthResult {
  std::vector<MeshOutput> meshes;
  AnalysisReport report;
};

AnalysisReport run_validate(const SurfaceSpec& spec);
/// Lifts and immerses every lift chart (or only `chart_filter`).
SynthResult run_synth(const SurfaceSpec& spec, const std::string& chart_filter = "");
/// Full analysis: data checks, lift, immersion, monodromy, duality, geometry, coverage.
AnalysisReport run_analyze(const SurfaceSpec& spec);
AnalysisReport run_coverage(const SurfaceSpec& spec);

/// Deterministic sample points in the interior of a chart.
std::vector<Complex> interior_samples(const Chart& chart, int per_axis = 4);

}  // namespace bryant
