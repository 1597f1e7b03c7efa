// Command-line front end: constants, mse, rate, dist, sample.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "flevy/experiment.hpp"
#include "flevy/parallel.hpp"

namespace {

struct Options {
  double hurst = 0.6;
  std::vector<double> hurst_grid;
  double horizon = 1.0;
  std::vector<std::size_t> n_values;
  std::size_t ref_factor = 64;
  std::size_t samples = 5000;
  std::uint64_t seed = 20240601;
  int workers = 0;
  std::string format = "csv";
  std::string out;
  std::string scheme = "euler";
  std::string method = "decomposition";
  std::string what = "paths";
  std::size_t rosenblatt_resolution = std::size_t{1} << 16;
};

flevy::ExperimentConfig to_config(const Options& o) {
  flevy::ExperimentConfig c;
  c.hurst = o.hurst;
  c.hurst_grid = o.hurst_grid;
  c.horizon = o.horizon;
  c.n_values = o.n_values;
  c.reference_factor = o.ref_factor;
  c.sample_count = o.samples;
  c.master_seed = o.seed;
  c.worker_count = o.workers > 0 ? o.workers : flevy::default_worker_count();
  c.output_format = flevy::parse_format(o.format);
  c.output_path = o.out;
  c.scheme = flevy::parse_scheme(o.scheme);
  c.method = flevy::oracle::parse_method(o.method);
  c.rosenblatt_resolution = o.rosenblatt_resolution;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discretisation error laboratory for the Levy area of fractional Brownian motion", "flevy"};
  app.set_version_flag("--version", std::string(flevy::kVersion));
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--hurst", o.hurst, "Hurst parameter in (1/4, 1)")->capture_default_str();
  app.add_option("--hurst-grid", o.hurst_grid, "Several H values (constants only)")->delimiter(',');
  app.add_option("--horizon", o.horizon, "Time horizon T")->capture_default_str();
  app.add_option("--n", o.n_values, "Coarse grid sizes, comma separated or repeated")->delimiter(',');
  app.add_option("--ref-factor", o.ref_factor, "Reference resolution factor r")->capture_default_str();
  app.add_option("--samples", o.samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads (default: FLEVY_WORKERS or hardware)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--scheme", o.scheme, "euler or trapezoid")
      ->check(CLI::IsMember({"euler", "trapezoid"}))
      ->capture_default_str();
  app.add_option("--method", o.method, "decomposition, pair or monte_carlo")
      ->check(CLI::IsMember({"decomposition", "pair", "monte_carlo"}))
      ->capture_default_str();
  app.add_option("--rosenblatt-resolution", o.rosenblatt_resolution, "Fine grid for the Rosenblatt sampler")
      ->capture_default_str();

  auto* constants = app.add_subcommand("constants", "Error constants c1, c2 and alpha1..alpha4");
  auto* mse = app.add_subcommand("mse", "Mean-square errors, one row per n");
  auto* rate = app.add_subcommand("rate", "Fitted convergence exponent");
  auto* dist = app.add_subcommand("dist", "Distribution test of the scaled error");
  auto* sample = app.add_subcommand("sample", "Raw paths or Rosenblatt draws");
  sample->add_option("--what", o.what, "paths or rosenblatt")
      ->check(CLI::IsMember({"paths", "rosenblatt"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const flevy::ExperimentConfig config = to_config(o);
    std::ofstream file;
    if (!config.output_path.empty()) {
      file.open(config.output_path);
      if (!file) {
        std::cerr << "flevy: cannot open " << config.output_path << '\n';
        return 2;
      }
    }
    std::ostream& out = config.output_path.empty() ? std::cout : file;
    if (*constants) flevy::cmd_constants(config, out);
    if (*mse) flevy::cmd_mse(config, out);
    if (*rate) flevy::cmd_rate(config, out);
    if (*dist) flevy::cmd_dist(config, out);
    if (*sample) flevy::cmd_sample(config, o.what, out);
    out.flush();
    if (!out) {
      std::cerr << "flevy: write failed\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "flevy: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
