#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "flevy/oracle.hpp"
#include "flevy/schemes.hpp"

namespace flevy {

inline constexpr std::string_view kVersion = "flevy 0.1.0";

enum class OutputFormat { kCsv, kJson };
OutputFormat parse_format(std::string_view name);

struct ExperimentConfig {
  double hurst = 0.6;
  std::vector<double> hurst_grid;  // constants: rows for these H instead of `hurst`
  double horizon = 1.0;
  std::vector<std::size_t> n_values;
  std::size_t reference_factor = 64;
  std::size_t sample_count = 5000;
  std::uint64_t master_seed = 20240601;
  int worker_count = 1;
  OutputFormat output_format = OutputFormat::kCsv;
  std::string output_path;  // empty: standard output
  SchemeKind scheme = SchemeKind::kEuler;
  oracle::Method method = oracle::Method::kDecomposition;
  std::size_t rosenblatt_resolution = std::size_t{1} << 16;

  /// Throws DomainError on n < 1, a reference factor that is not a power of
  /// two >= 2, or H outside (1/4, 1).
  void validate() const;
  /// n_values, or `fallback` when none were given.
  std::vector<std::size_t> sizes_or(std::vector<std::size_t> fallback) const;
};

/// Real formatted with 17 significant digits; NaN prints as an empty field.
std::string format_real(double value);

/// H,regime,c1,c2,alpha1,alpha2,alpha3,alpha4,log_case_constant,note
void cmd_constants(const ExperimentConfig& config, std::ostream& out);
/// H,T,n,scheme,method,mse,prediction,ratio,error_bar,error
void cmd_mse(const ExperimentConfig& config, std::ostream& out);
/// H,T,scheme,model,fitted_exponent,expected_exponent,log_coefficient,pass
void cmd_rate(const ExperimentConfig& config, std::ostream& out);
/// Regime-dispatched distribution report (JSON object or key,value rows).
void cmd_dist(const ExperimentConfig& config, std::ostream& out);
/// Raw paths (index,t,component1,component2) or Rosenblatt draws (index,value).
void cmd_sample(const ExperimentConfig& config, std::string_view what, std::ostream& out);

}  // namespace flevy
