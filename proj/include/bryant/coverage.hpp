#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bryant/chart.hpp"
#include "bryant/meromorphic.hpp"

namespace bryant {

enum class CoverageMode { ConstantMap, ExactRational, Sampled };
std::string to_string(CoverageMode m);

struct CoverageReport {
  CoverageMode mode = CoverageMode::ExactRational;
  std::vector<Complex> omitted;  // exact omitted values, or centres of uncovered clusters
  int omitted_count = 0;         // -1 encodes "constant"
  int level = 0;                 // icosphere level (sampled mode)
  int cells_total = 0;
  int cells_uncovered = 0;
};

/// Exact omitted set of a rational G on the sphere minus the punctures. Only
/// the values G(p), p a puncture, can be omitted; each is tested by solving
/// G = w and checking that every preimage (including infinity) is a puncture.
CoverageReport omitted_values_exact(const PowerRational& G, const std::vector<Complex>& punctures);

Eigen::Vector3d to_sphere(Complex w);
Complex from_sphere(const Eigen::Vector3d& p);

/// Subdivided icosahedron; level L has 20 * 4^(L-1) triangular cells.
class Icosphere {
 public:
  explicit Icosphere(int level);
  int level() const { return static_cast<int>(levels_.size()); }
  int cell_count() const { return static_cast<int>(levels_.back().size()); }
  /// Cell containing the unit vector p (hierarchical descent).
  int locate(const Eigen::Vector3d& p) const;
  Eigen::Vector3d centroid(int cell) const;
  double area(int cell) const;
  /// Cells sharing at least one vertex with `cell`.
  const std::vector<int>& neighbours(int cell) const { return adjacency_[cell]; }
  /// Angular diameter bound of a cell, used to stop quad refinement.
  double cell_size() const { return cell_size_; }

 private:
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<std::vector<std::array<int, 3>>> levels_;
  std::vector<std::vector<int>> adjacency_;
  double cell_size_ = 0.0;
};

/// Samples of G on a chart grid (row-major, chart.index order).
struct GaussSamples {
  Chart chart;
  std::vector<Complex> values;
};

struct SampledOptions {
  int level = 4;
  Eigen::Matrix3d frame = Eigen::Matrix3d::Identity();  // rotation applied before rasterization
  int max_refine = 6;                                   // quad subdivision depth
};

/// Marks icosphere cells hit by the samples; grid quads are refined by
/// spherical bilinear interpolation until they are smaller than a cell.
/// Uncovered cells are clustered by vertex adjacency; each cluster bounds
/// one possibly omitted value. Escalates to ConstantMap for dispersion < 1e-12.
CoverageReport coverage_sampled(const std::vector<GaussSamples>& samples, const SampledOptions& opts = {});
/// Scattered samples without quad interpolation.
CoverageReport coverage_sampled(const std::vector<Complex>& values, const SampledOptions& opts = {});

enum class PicardVerdict { Pass, Fail, ResolutionBounded };
std::string to_string(PicardVerdict v);

struct VerdictReport {
  PicardVerdict verdict = PicardVerdict::Pass;
  std::string annotation;
};

VerdictReport picard_verdict(const CoverageReport& report);

/// Sphere rotation induced by the unitary Mobius map (a w - conj(c)) / (c w + conj(a)), |a|^2 + |c|^2 = 1.
Eigen::Matrix3d sphere_rotation(Complex a, Complex c);

}  // namespace bryant
