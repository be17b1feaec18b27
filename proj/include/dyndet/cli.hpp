#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyndet/config.hpp"
#include "dyndet/determinant.hpp"
#include "dyndet/periodic_points.hpp"
#include "dyndet/response.hpp"

namespace dyndet {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitUnconverged = 3,
};

/// Commands accepted by run().
const std::vector<std::string>& command_names();

/// Executes one command, writing its artifacts into config.params.out_dir.
/// Diagnostics go to `log`. Returns an ExitCode.
int run(const std::string& command, const RunConfig& config, std::ostream& log);

/// Decimal form with 17 significant digits, as used in every CSV.
std::string format_double(double v);

std::string fixed_points_csv(const FixedPointSet& set);
std::string traces_csv(std::span<const TraceTerms> table);
std::string det_coeffs_csv(const DetSeries& series);
std::string convergence_csv(const ConvergenceReport& report);
std::string density_csv(const std::vector<double>& density);

struct PressureResult {
  double tau = 0.0;
  int n_max = 0;
  double z_star = 0.0;
  double pressure = 0.0;
  double dz = 0.0;
  double tail = 0.0;
  bool converged = true;
};

nlohmann::json to_json(const PressureResult& r);
PressureResult pressure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResponseResult& r);
/// Reads back the scalar fields and flags (the partial-sum table is restored too).
ResponseResult response_from_json(const nlohmann::json& j);

} // namespace dyndet
