#pragma once

#include <string>
#include <vector>

#include "bryant/chart.hpp"
#include "bryant/meromorphic.hpp"

namespace bryant {

enum class TargetSpace { HyperbolicSpace, DeSitterSpace };

/// Representation data (g, omega = f dz) on the sphere minus `punctures`.
struct BryantData {
  PowerRational g;
  PowerRational f;
  std::vector<Complex> punctures;  // may contain the infinity marker
  TargetSpace target = TargetSpace::HyperbolicSpace;
  int genus = 0;
};

/// Element [[conj p, -q], [-conj q, p]] of SU(1,1), |p|^2 - |q|^2 = 1.
struct SU11Element {
  Complex p = 1.0;
  Complex q = 0.0;

  static SU11Element make(Complex p, Complex q);
  static SU11Element boost(double t) { return make(std::cosh(t), std::sinh(t)); }
  static SU11Element rotation(double theta) { return make(std::polar(1.0, theta), 0.0); }
};

struct SurfaceTopology {
  int n_ends = 0;
  int euler = 2;  // chi(M) = 2 - 2 genus - n_ends

  static SurfaceTopology of(const BryantData& data);
};

struct Diagnostic {
  std::string kind;
  Complex location;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> issues;
  bool clean() const { return issues.empty(); }
};

/// Pole/zero bookkeeping on the sphere minus the punctures.
ValidationReport validate(const BryantData& data);

/// Pointwise evaluation with cached derivatives. Where |g| > 1 the data is
/// evaluated through the rotation (-1/g, g^2 f), which leaves metric,
/// curvature and Hopf differential unchanged and stays finite at poles of g.
class DataEvaluator {
 public:
  explicit DataEvaluator(const BryantData& data);

  const BryantData& data() const { return data_; }
  Complex g(Complex z) const { return data_.g(z); }
  Complex f(Complex z) const { return data_.f(z); }
  Complex dg(Complex z) const { return dg_(z); }

  /// (1 +- |g|^2)^2 |f|^2; +inf at an unmatched pole of f.
  double metric_density(Complex z) const;
  /// (1 + |g|^2)^2 |f|^2 regardless of the target (companion H^3 metric).
  double hyperbolic_density(Complex z) const;
  /// -4 |g'|^2 / (|f|^2 (1 + |g|^2)^4) for the companion H^3 metric.
  double hyperbolic_curvature(Complex z) const;
  /// 4 |g'|^2 / (1 + |g|^2)^2, the curvature form density -kappa Lambda^2.
  double curvature_form(Complex z) const;
  Complex hopf_density(Complex z) const;

 private:
  struct Local {
    Complex g, f, dg;
  };
  Local local(Complex z) const;

  BryantData data_;
  PowerRational dg_;
  PowerRational g2f_;
  PowerRational rot_dg_;
};

double metric_density(const BryantData& data, Complex z);
/// Gaussian curvature of the H^3 metric. Throws for de Sitter data and at
/// degenerate points.
double gauss_curvature(const BryantData& data, Complex z);
/// Density q of the Hopf differential Q = f g' dz^2.
Complex hopf_density(const BryantData& data, Complex z);

/// Equivalent Aiyama data under F -> F B.
BryantData su11_action(const BryantData& data, const SU11Element& B);

/// Same data interpreted in H^3, giving the companion metric (1 + |g|^2)^2 |omega|^2.
BryantData hyperbolic_companion(const BryantData& data);

struct GridCell {
  int i = 0;
  int j = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Cells of the chart whose corners see a sign change of |g|^2 - 1.
std::vector<GridCell> singular_locus(const BryantData& data, const Chart& chart);

}  // namespace bryant
