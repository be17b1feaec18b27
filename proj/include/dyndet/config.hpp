#pragma once

#include <string>

#include "json.hpp"

#include "dyndet/map_model.hpp"

namespace dyndet {

/// Single source of every run default. Each entry can be overridden per run
/// in the config's "params" object or by the matching CLI flag.
struct Defaults {
  static constexpr int n_max = 12;
  static constexpr int bins = 1 << 15;
  static constexpr double fd_step = 0.01;
  static constexpr int period = 1;
  static constexpr unsigned workers = 1;
  static constexpr double tau = 0.0;
  static constexpr double u = 0.0;
  static constexpr double residual_tol = 1e-12;
  static constexpr double merge_tol = 1e-9;
  static constexpr double tail_tol = 1e-6;
  static constexpr double zero_tail_limit = 1e-8;
  static constexpr unsigned long max_itineraries = 1UL << 22;
  static constexpr int schema_version = 1;
};

struct RunParams {
  int n_max = Defaults::n_max;
  double tau = Defaults::tau;
  int bins = Defaults::bins;
  double fd_step = Defaults::fd_step;
  int period = Defaults::period;
  unsigned workers = Defaults::workers;
  std::string out_dir = ".";
};

struct RunConfig {
  TrigMapFamily family;
  Observable observable;
  Weight weight;
  RunParams params;
};

/// Parses the versioned JSON document. Numbers may be JSON numbers or
/// decimal strings. Throws InputError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Rejects configs whose family is not certified expanding or whose
/// parameters fall outside tau_domain. Throws ExpansionError / InputError.
void validate_config(const RunConfig& config);

} // namespace dyndet
