// Python bindings. Configs travel as JSON text, reports come back as JSON
// text (the package wrapper turns them into dicts), meshes as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bryant/config.hpp"
#include "bryant/coverage.hpp"
#include "bryant/null_lift.hpp"
#include "bryant/pipeline.hpp"

namespace py = pybind11;
using namespace bryant;

namespace {

SurfaceSpec spec_from(const std::string& text, double tolerance_scale) {
  SurfaceSpec spec = parse_config(text);
  if (tolerance_scale > 0.0) spec.tolerance_scale = tolerance_scale;
  return spec;
}

template <class Fn>
std::string report_call(const std::string& text, double scale, Fn fn) {
  const SurfaceSpec spec = spec_from(text, scale);
  AnalysisReport r;
  {
    py::gil_scoped_release release;
    r = fn(spec);
  }
  return r.to_json().dump(2);
}

py::array_t<double> as_array(const std::vector<std::array<double, 3>>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size()), py::ssize_t{3}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t k = 0; k < v.size(); ++k)
    for (int c = 0; c < 3; ++c) m(k, c) = v[k][c];
  return out;
}

py::array_t<int> as_array(const std::vector<std::array<int, 4>>& v) {
  py::array_t<int> out({static_cast<py::ssize_t>(v.size()), py::ssize_t{4}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t k = 0; k < v.size(); ++k)
    for (int c = 0; c < 4; ++c) m(k, c) = v[k][c];
  return out;
}

py::array_t<std::complex<double>> as_array(const SL2Matrix& F) {
  py::array_t<std::complex<double>> out({2, 2});
  auto m = out.mutable_unchecked<2>();
  m(0, 0) = F.a;
  m(0, 1) = F.b;
  m(1, 0) = F.c;
  m(1, 1) = F.d;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CMC-1 surfaces in hyperbolic and de Sitter space";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("validate", [](const std::string& text, double scale) { return report_call(text, scale, run_validate); },
        py::arg("config"), py::arg("tolerance_scale") = 0.0);
  m.def("analyze", [](const std::string& text, double scale) { return report_call(text, scale, run_analyze); },
        py::arg("config"), py::arg("tolerance_scale") = 0.0);
  m.def("coverage", [](const std::string& text, double scale) { return report_call(text, scale, run_coverage); },
        py::arg("config"), py::arg("tolerance_scale") = 0.0);

  m.def(
      "synth",
      [](const std::string& text, const std::string& chart) {
        const SurfaceSpec spec = spec_from(text, 0.0);
        SynthResult res;
        {
          py::gil_scoped_release release;
          res = run_synth(spec, chart);
        }
        py::list meshes;
        for (const MeshOutput& mo : res.meshes) {
          py::dict d;
          d["chart"] = mo.chart;
          d["vertices"] = as_array(mo.mesh.vertices);
          d["faces"] = as_array(mo.mesh.faces);
          d["kappa"] = py::array_t<double>(static_cast<py::ssize_t>(mo.mesh.kappa.size()), mo.mesh.kappa.data());
          d["singular"] = py::array_t<std::uint8_t>(static_cast<py::ssize_t>(mo.mesh.singular.size()), mo.mesh.singular.data());
          meshes.append(d);
        }
        return py::make_tuple(meshes, res.report.to_json().dump(2));
      },
      py::arg("config"), py::arg("chart") = "");

  m.def(
      "lift",
      [](const std::string& text, Complex z) {
        const SurfaceSpec spec = spec_from(text, 0.0);
        SL2Matrix F;
        {
          py::gil_scoped_release release;
          F = integrate_path(spec.data, PathSpec::segment(spec.base_point, z), {});
        }
        return as_array(F);
      },
      py::arg("config"), py::arg("z"), "Null lift at z, integrated along the segment from the base point.");

  m.def(
      "monodromy",
      [](const std::string& text, Complex center, double radius) {
        const SurfaceSpec spec = spec_from(text, 0.0);
        const MonodromyClass c = monodromy(spec.data, PathSpec::circle_loop(center, radius));
        return py::make_tuple(as_array(c.matrix), to_string(c.kind));
      },
      py::arg("config"), py::arg("center"), py::arg("radius"));

  m.def(
      "omitted_values",
      [](const std::string& text) {
        const SurfaceSpec spec = spec_from(text, 0.0);
        if (!spec.gauss_map) throw DomainError("config has no gauss_map");
        const CoverageReport r = omitted_values_exact(*spec.gauss_map, spec.data.punctures);
        py::list values;
        for (Complex w : r.omitted) {
          if (is_infinite(w))
            values.append(py::none());
          else
            values.append(w);
        }
        return py::make_tuple(r.omitted_count, values);
      },
      py::arg("config"), "Exactly omitted values of the supplied Gauss map; None stands for infinity.");

  m.attr("__version__") = kToolVersion;
}
