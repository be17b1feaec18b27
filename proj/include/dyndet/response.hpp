#pragma once

#include <array>
#include <string>
#include <vector>

#include "dyndet/determinant.hpp"

namespace dyndet {

/// The five series entering the SRB-average and linear-response ratios,
/// all evaluated at z = 1:
///   sum a_n, sum n a_n, sum d_u a_n, sum n d_tau a_n, sum d_u d_tau a_n.
enum class ResponseSeries { a = 0, n_a, au, n_atau, autau };
inline constexpr std::size_t kResponseSeriesCount = 5;
const char* series_name(ResponseSeries s);

struct PartialSumRow {
  int n = 0;
  std::array<double, kResponseSeriesCount> sums{};
  double srb_average = 0.0;     // -sum au / sum n a   over terms <= n
  double linear_response = 0.0; // same truncation
};

struct SeriesConvergence {
  double rate = 0.0;
  double tail = 0.0; // estimated |remainder| at z = 1
};

struct ConvergenceReport {
  std::vector<PartialSumRow> rows; // n = 0..n_max
  std::array<SeriesConvergence, kResponseSeriesCount> series{};
  double max_tail() const;
};

ConvergenceReport convergence_report(const DetSeries& series);

struct ResponseOptions {
  TraceOptions traces{};
  double tail_tolerance = 1e-6;      // above this a result is flagged unconverged
  double degenerate_dz = 1e-6;       // |d_z(1)| below this is a degenerate zero
  double zero_tolerance = 1e-8;      // |z* - 1| diagnostic
  double self_check_tolerance = 1e-14;
};

struct ResponseResult {
  double tau = 0.0;
  int n_max = 0;
  double srb_average = 0.0;
  double linear_response = 0.0;
  /// Same quantity from the Horner-evaluated partials of d at (1, 0, 0).
  double linear_response_raw = 0.0;
  double z_star = 0.0; // smallest zero of d(., 0, tau); NaN if none was bracketed
  bool converged = true;
  std::vector<std::string> flags;
  ConvergenceReport convergence;
};

/// Determinant series of the SRB weight family re-based at tau.
DetSeries response_series(const TrigMapFamily& family, const Observable& g, double tau, int n_max,
                          const TraceOptions& options = {});

/// Evaluates both ratios at z = 1 from a ready series.
ResponseResult analyze_series(const DetSeries& series, double tau,
                              const ResponseOptions& options = {});

/// Full pipeline at parameter tau: enumeration, traces, determinant, ratios.
ResponseResult analyze_response(const TrigMapFamily& family, const Observable& g, double tau,
                                int n_max, const ResponseOptions& options = {});

/// integral of g against the SRB measure of T_tau: -d_u d / d_z d at (1, 0, tau).
double srb_average(const TrigMapFamily& family, const Observable& g, double tau, int n_max,
                   const ResponseOptions& options = {});

/// d/dtau of the SRB average at tau = 0.
double linear_response(const TrigMapFamily& family, const Observable& g, int n_max,
                       const ResponseOptions& options = {});

} // namespace dyndet
