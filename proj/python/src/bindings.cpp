#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "flevy/constants.hpp"
#include "flevy/errors.hpp"
#include "flevy/experiment.hpp"
#include "flevy/fgn.hpp"
#include "flevy/limitlaws.hpp"
#include "flevy/oracle.hpp"
#include "flevy/rosenblatt.hpp"
#include "flevy/statistics.hpp"

namespace py = pybind11;
using namespace flevy;

namespace {

py::dict report_dict(const oracle::MseReport& r) {
  py::dict d;
  d["hurst"] = r.hurst;
  d["horizon"] = r.horizon;
  d["n"] = r.n;
  d["scheme"] = std::string(to_string(r.scheme));
  d["method"] = std::string(oracle::to_string(r.method));
  d["mse"] = r.exact_mse;
  d["prediction"] = r.asymptotic_prediction;
  d["ratio"] = r.ratio;
  d["error_bar"] = r.error_bar ? py::cast(*r.error_bar) : py::none();
  d["bias_bound"] = r.bias_bound ? py::cast(*r.bias_bound) : py::none();
  return d;
}

py::dict summary_dict(const stats::Summary& s) {
  py::dict d;
  d["count"] = s.count;
  d["mean"] = s.mean;
  d["variance"] = s.variance;
  d["variance_se"] = s.variance_se;
  d["skewness"] = s.skewness;
  d["skewness_se"] = s.skewness_se;
  d["excess_kurtosis"] = s.excess_kurtosis;
  d["excess_kurtosis_se"] = s.excess_kurtosis_se;
  return d;
}

template <typename F>
std::string capture(F&& command) {
  std::ostringstream out;
  command(out);
  return out.str();
}

ExperimentConfig make_config(double hurst, std::vector<std::size_t> n, double horizon, std::size_t samples,
                             std::uint64_t seed, int workers, const std::string& format) {
  ExperimentConfig c;
  c.hurst = hurst;
  c.n_values = std::move(n);
  c.horizon = horizon;
  c.sample_count = samples;
  c.master_seed = seed;
  c.worker_count = workers;
  c.output_format = parse_format(format);
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_flevy, m) {
  m.doc() = "Discretisation errors of fractional Levy area";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<DivisibilityError>(m, "DivisibilityError", PyExc_ValueError);
  py::register_exception<InsufficientSamplesError>(m, "InsufficientSamplesError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.attr("__version__") = std::string(kVersion);

  m.def("regime", [](double h) { return std::string(to_string(HurstParameter(h).regime())); }, py::arg("hurst"));
  m.def("c1", [](double h) { return constants::c1(HurstParameter(h)); }, py::arg("hurst"));
  m.def("c2", [](double h) { return constants::c2(HurstParameter(h)); }, py::arg("hurst"));
  m.def("alpha1", [](double h) { return constants::alpha1(HurstParameter(h)); }, py::arg("hurst"));
  m.def("alpha2", [](double h) { return constants::alpha2(HurstParameter(h)); }, py::arg("hurst"));
  m.def("alpha3", [](double h) { return constants::alpha3(HurstParameter(h)); }, py::arg("hurst"));
  m.def("alpha4", [](double h) { return constants::alpha4(HurstParameter(h)); }, py::arg("hurst"));
  m.def(
      "q_offdiag", [](double h, int k) { return constants::q_offdiag(HurstParameter(h), k); }, py::arg("hurst"),
      py::arg("k"));

  m.def(
      "mse_euler",
      [](double h, double horizon, std::size_t n) {
        return report_dict(oracle::mse_euler_exact(HurstParameter(h), horizon, n));
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("n"));
  m.def(
      "mse_trapezoid",
      [](double h, double horizon, std::size_t n) {
        return report_dict(oracle::mse_trapezoid_exact(HurstParameter(h), horizon, n));
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("n"));
  m.def(
      "mse_pair",
      [](double h, double horizon, const std::string& scheme_a, std::size_t n_a, const std::string& scheme_b,
         std::size_t n_b, std::size_t fine, int workers) {
        py::gil_scoped_release release;
        return oracle::mse_pair_exact(HurstParameter(h), horizon, {parse_scheme(scheme_a), n_a},
                                      {parse_scheme(scheme_b), n_b}, fine, workers);
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("scheme_a"), py::arg("n_a"), py::arg("scheme_b"),
      py::arg("n_b"), py::arg("fine"), py::arg("workers") = 1);
  m.def(
      "mse_monte_carlo",
      [](double h, double horizon, std::size_t n, const std::string& scheme, std::size_t ref_factor,
         std::size_t samples, std::uint64_t seed, int workers) {
        oracle::MseReport r;
        {
          py::gil_scoped_release release;
          r = oracle::mse_monte_carlo(HurstParameter(h), horizon, n, parse_scheme(scheme), ref_factor, samples,
                                      seed, workers);
        }
        return report_dict(r);
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("n"), py::arg("scheme") = "euler", py::arg("ref_factor") = 64,
      py::arg("samples") = 1000, py::arg("seed") = 20240601, py::arg("workers") = 1);

  m.def(
      "sample_path_pair",
      [](double h, double horizon, std::size_t resolution, std::uint64_t seed) {
        RandomStream stream(seed, StreamTag::kPaths, 0);
        const PathPair p = sample_path_pair(HurstParameter(h), GridSpec(horizon, resolution), stream);
        return py::make_tuple(p.component1, p.component2);
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("resolution"), py::arg("seed") = 20240601);
  m.def(
      "scaled_errors",
      [](double h, double horizon, std::size_t n, std::size_t ref_factor, std::size_t samples, std::uint64_t seed,
         int workers) {
        py::gil_scoped_release release;
        return scaled_error_samples(HurstParameter(h), horizon, n, ref_factor, samples, seed, workers)
            .samples.values;
      },
      py::arg("hurst"), py::arg("horizon"), py::arg("n"), py::arg("ref_factor") = 64, py::arg("samples") = 5000,
      py::arg("seed") = 20240601, py::arg("workers") = 1);
  m.def(
      "rosenblatt",
      [](double h, std::size_t samples, std::size_t resolution, std::uint64_t seed, int workers) {
        py::gil_scoped_release release;
        return rosenblatt_sample_qv(RosenblattSpec(HurstParameter(h), resolution), samples, seed, workers).values;
      },
      py::arg("hurst"), py::arg("samples"), py::arg("resolution") = std::size_t{1} << 16,
      py::arg("seed") = 20240601, py::arg("workers") = 1);

  m.def(
      "summarize", [](const std::vector<double>& v) { return summary_dict(stats::summarize(v)); }, py::arg("values"));
  m.def(
      "normality",
      [](const std::vector<double>& v) {
        const auto r = stats::normality_report(stats::SampleSet(v, "python"));
        py::dict d;
        d["skewness_z"] = r.skewness_z;
        d["kurtosis_z"] = r.kurtosis_z;
        d["ks_distance"] = r.ks_distance;
        d["ks_critical"] = r.ks_critical;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("values"));
  m.def(
      "ks_two_sample",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const auto r = stats::ks_two_sample(a, b);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "run",
      [](const std::string& command, double hurst, std::vector<std::size_t> n, double horizon, std::size_t samples,
         std::uint64_t seed, int workers, const std::string& format) {
        const auto c = make_config(hurst, std::move(n), horizon, samples, seed, workers, format);
        py::gil_scoped_release release;
        if (command == "constants") return capture([&](std::ostream& o) { cmd_constants(c, o); });
        if (command == "mse") return capture([&](std::ostream& o) { cmd_mse(c, o); });
        if (command == "rate") return capture([&](std::ostream& o) { cmd_rate(c, o); });
        if (command == "dist") return capture([&](std::ostream& o) { cmd_dist(c, o); });
        throw std::invalid_argument("unknown command: " + command);
      },
      py::arg("command"), py::arg("hurst") = 0.6, py::arg("n") = std::vector<std::size_t>{}, py::arg("horizon") = 1.0,
      py::arg("samples") = 5000, py::arg("seed") = 20240601, py::arg("workers") = 1, py::arg("format") = "csv");
}
