#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "randroots/analysis.hpp"
#include "randroots/campaigns.hpp"
#include "randroots/ensembles.hpp"
#include "randroots/evaluation.hpp"
#include "randroots/io.hpp"
#include "randroots/kernels.hpp"
#include "randroots/rootcount.hpp"

namespace py = pybind11;
using namespace randroots;

namespace {

EnsembleSpec make_spec(const std::string& ensemble, int n, const std::string& dist,
                       double jacobi_alpha, double jacobi_beta) {
  return EnsembleSpec::parse(ensemble, n, CoeffDist::parse(dist), jacobi_alpha, jacobi_beta);
}

Interval pick_interval(const EnsembleSpec& spec, const std::vector<double>& interval) {
  if (interval.empty()) return default_interval(spec);
  if (interval.size() != 2) throw std::invalid_argument("interval must be (lo, hi)");
  return Interval(interval[0], interval[1]);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Real roots of random polynomials";
  m.attr("__version__") = RANDROOTS_VERSION;

  py::class_<EnsembleSpec>(m, "EnsembleSpec")
      .def(py::init(&make_spec), py::arg("ensemble"), py::arg("n"),
           py::arg("dist") = "gauss", py::arg("jacobi_alpha") = 0.0,
           py::arg("jacobi_beta") = 0.0)
      .def_property_readonly("degree", [](const EnsembleSpec& s) { return s.degree; })
      .def_property_readonly("name", &EnsembleSpec::name)
      .def("default_interval", [](const EnsembleSpec& s) {
        const Interval I = default_interval(s);
        return py::make_tuple(I.lo, I.hi);
      })
      .def("__repr__", [](const EnsembleSpec& s) { return "EnsembleSpec(" + s.name() + ")"; });

  py::class_<PolySample>(m, "PolySample")
      .def_readonly("a", &PolySample::a)
      .def_readonly("b", &PolySample::b)
      .def_readonly("seed", &PolySample::seed)
      .def("__call__", [](const PolySample& p, double x) { return evaluate(p, x); })
      .def("derivative", [](const PolySample& p, double x) { return evaluate_derivative(p, x); });

  m.def("make_sample", &make_sample, py::arg("spec"), py::arg("seed"));
  m.def("sample_from", &make_sample_from, py::arg("spec"), py::arg("a"),
        py::arg("b") = std::vector<double>{});

  m.def("intensity",
        [](const EnsembleSpec& s, double x) { return intensity(KernelId::of(s), x); },
        py::arg("spec"), py::arg("x"));
  m.def(
      "expected_roots",
      [](const EnsembleSpec& s, const std::vector<double>& interval) {
        if (interval.empty()) return expected_roots_full_line(KernelId::of(s));
        return expected_roots(KernelId::of(s), pick_interval(s, interval));
      },
      py::arg("spec"), py::arg("interval") = std::vector<double>{},
      "Kac-Rice expected number of real roots; the whole line when no interval is given.");

  m.def(
      "count_roots",
      [](const PolySample& p, const std::vector<double>& interval, double density) {
        return count_roots_scan(p, pick_interval(p.spec, interval), density).count;
      },
      py::arg("sample"), py::arg("interval") = std::vector<double>{},
      py::arg("density") = 16.0);
  m.def(
      "find_roots",
      [](const PolySample& p, const std::vector<double>& interval) {
        return find_roots(p, pick_interval(p.spec, interval));
      },
      py::arg("sample"), py::arg("interval") = std::vector<double>{});
  m.def(
      "count_roots_sturm",
      [](const std::vector<std::int64_t>& coeffs, double lo, double hi) {
        return count_roots_sturm(coeffs, Interval(lo, hi)).count;
      },
      py::arg("coeffs"), py::arg("lo"), py::arg("hi"));

  m.def(
      "_simulate",
      [](const EnsembleSpec& s, int trials, std::uint64_t seed,
         const std::vector<double>& interval, int workers) {
        ExperimentConfig cfg;
        cfg.spec = s;
        cfg.interval = pick_interval(s, interval);
        cfg.trials = trials;
        cfg.base_seed = seed;
        cfg.workers = workers;
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        return to_json(r).dump();
      },
      py::arg("spec"), py::arg("trials"), py::arg("seed") = 0,
      py::arg("interval") = std::vector<double>{}, py::arg("workers") = 1);

  m.def("ks_lattice", [](const std::vector<int>& counts) { return ks_lattice(counts).statistic; },
        py::arg("counts"));

  m.def(
      "_verify",
      [](const std::string& lemma, int instances, std::uint64_t seed, int workers) {
        CampaignSummary s;
        {
          py::gil_scoped_release release;
          s = run_campaign(lemma, instances, seed, workers);
        }
        return to_json(s).dump();
      },
      py::arg("lemma"), py::arg("instances"), py::arg("seed") = 0, py::arg("workers") = 1);
  m.def("campaign_names", &campaign_names);
}
