#include "dyndet/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyndet/errors.hpp"

namespace dyndet {

const char* series_name(ResponseSeries s) {
  switch (s) {
  case ResponseSeries::a:
    return "a";
  case ResponseSeries::n_a:
    return "n_a";
  case ResponseSeries::au:
    return "au";
  case ResponseSeries::n_atau:
    return "n_atau";
  case ResponseSeries::autau:
    return "autau";
  }
  return "?";
}

double ConvergenceReport::max_tail() const {
  double m = 0.0;
  for (const auto& s : series)
    m = std::max(m, s.tail);
  return m;
}

ConvergenceReport convergence_report(const DetSeries& s) {
  ConvergenceReport report;
  const auto len = static_cast<std::size_t>(s.n_max) + 1;
  std::array<std::vector<double>, kResponseSeriesCount> terms;
  for (auto& t : terms)
    t.assign(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    terms[0][n] = s.a[n];
    terms[1][n] = static_cast<double>(n) * s.a[n];
    terms[2][n] = s.au[n];
    terms[3][n] = static_cast<double>(n) * s.atau[n];
    terms[4][n] = s.autau[n];
  }

  std::array<double, kResponseSeriesCount> acc{};
  for (std::size_t n = 0; n < len; ++n) {
    PartialSumRow row;
    row.n = static_cast<int>(n);
    for (std::size_t k = 0; k < kResponseSeriesCount; ++k) {
      acc[k] += terms[k][n];
      row.sums[k] = acc[k];
    }
    const double na = acc[1];
    if (na != 0.0) {
      row.srb_average = -acc[2] / na;
      row.linear_response = -acc[4] / na + acc[3] * acc[2] / (na * na);
    } else {
      row.srb_average = std::numeric_limits<double>::quiet_NaN();
      row.linear_response = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }

  for (std::size_t k = 0; k < kResponseSeriesCount; ++k) {
    const GeometricFit fit = fit_geometric(terms[k]);
    report.series[k] = {fit.rate, fit.tail(1.0)};
  }
  return report;
}

DetSeries response_series(const TrigMapFamily& family, const Observable& g, double tau, int n_max,
                          const TraceOptions& options) {
  const TrigMapFamily based = tau == 0.0 ? family : family.rebased(tau);
  const std::vector<TraceTerms> table = trace_table(based, g, n_max, options);
  return det_coefficient_partials(table, n_max);
}

ResponseResult analyze_series(const DetSeries& series, double tau,
                              const ResponseOptions& options) {
  ResponseResult r;
  r.tau = tau;
  r.n_max = series.n_max;
  r.convergence = convergence_report(series);

  const PartialSumRow& last = r.convergence.rows.back();
  const double sum_na = last.sums[1];
  if (!(std::fabs(sum_na) >= options.degenerate_dz))
    throw DegenerateZeroError("|d_z(1, 0, tau)| = " + std::to_string(std::fabs(sum_na)) +
                              " is below " + std::to_string(options.degenerate_dz));
  r.srb_average = last.srb_average;
  r.linear_response = last.linear_response;

  const DetValues v = eval_det(series, 1.0);
  r.linear_response_raw = -v.dutau / v.dz + v.dtauz * v.du / (v.dz * v.dz);
  if (std::fabs(r.linear_response_raw - r.linear_response) >
      options.self_check_tolerance * std::max(1.0, std::fabs(r.linear_response)))
    throw ConsistencyError("series and Horner forms of the response disagree: " +
                           std::to_string(r.linear_response) + " vs " +
                           std::to_string(r.linear_response_raw));

  for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
    if (!(r.convergence.series[k].tail < options.tail_tolerance))
      r.flags.push_back(std::string("unconverged:") +
                        series_name(static_cast<ResponseSeries>(k)));

  try {
    r.z_star = find_smallest_zero(series).z_star;
    if (!(std::fabs(r.z_star - 1.0) < options.zero_tolerance))
      r.flags.emplace_back("zero_mismatch");
  } catch (const ConvergenceError&) {
    r.z_star = std::numeric_limits<double>::quiet_NaN();
    r.flags.emplace_back("zero_not_bracketed");
  }
  r.converged = r.flags.empty();
  return r;
}

ResponseResult analyze_response(const TrigMapFamily& family, const Observable& g, double tau,
                                int n_max, const ResponseOptions& options) {
  return analyze_series(response_series(family, g, tau, n_max, options.traces), tau, options);
}

double srb_average(const TrigMapFamily& family, const Observable& g, double tau, int n_max,
                   const ResponseOptions& options) {
  return analyze_response(family, g, tau, n_max, options).srb_average;
}

double linear_response(const TrigMapFamily& family, const Observable& g, int n_max,
                       const ResponseOptions& options) {
  return analyze_response(family, g, 0.0, n_max, options).linear_response;
}

} // namespace dyndet
