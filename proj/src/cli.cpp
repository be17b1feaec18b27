#include "dyndet/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dyndet/errors.hpp"
#include "dyndet/oracles.hpp"
#include "dyndet/orbit_traces.hpp"

namespace dyndet {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string itinerary_text(const std::vector<int>& it, int degree) {
  std::string s;
  for (std::size_t k = 0; k < it.size(); ++k) {
    if (degree > 10 && k > 0)
      s += '.';
    s += std::to_string(it[k]);
  }
  return s;
}

TraceOptions trace_options(const RunConfig& c) {
  TraceOptions o;
  o.workers = c.params.workers;
  o.residual_tol = Defaults::residual_tol;
  o.merge_tol = Defaults::merge_tol;
  o.max_itineraries = Defaults::max_itineraries;
  return o;
}

ResponseOptions response_options(const RunConfig& c) {
  ResponseOptions o;
  o.traces = trace_options(c);
  o.tail_tolerance = Defaults::tail_tol;
  return o;
}

TrigMapFamily based_family(const RunConfig& c) {
  return c.params.tau == 0.0 ? c.family : c.family.rebased(c.params.tau);
}

int status_of(bool converged, std::ostream& log, const std::string& what) {
  if (converged)
    return kExitOk;
  log << "warning: " << what << " is unconverged (value emitted with converged=false)\n";
  return kExitUnconverged;
}

int cmd_periodic_points(const RunConfig& c, const fs::path& out, std::ostream&) {
  const FixedPointSet set =
      enumerate_fixed_points(c.family, c.params.tau, c.params.period, trace_options(c));
  write_file(out / "fixed_points.csv", fixed_points_csv(set));
  return kExitOk;
}

int cmd_traces(const RunConfig& c, const fs::path& out, std::ostream&) {
  const auto table = trace_table(based_family(c), c.observable, c.params.n_max, trace_options(c));
  write_file(out / "traces.csv", traces_csv(table));
  return kExitOk;
}

int cmd_det_coeffs(const RunConfig& c, const fs::path& out, std::ostream&) {
  const auto table = trace_table(based_family(c), c.observable, c.params.n_max, trace_options(c));
  write_file(out / "det_coeffs.csv", det_coeffs_csv(det_coefficient_partials(table, c.params.n_max)));
  return kExitOk;
}

int cmd_pressure(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const auto b = weighted_trace_table(c.family, c.observable, c.params.tau, c.weight,
                                      c.params.n_max, trace_options(c));
  const DetSeries series = det_series(b, c.params.n_max);
  ZeroOptions zo;
  zo.tail_limit = Defaults::zero_tail_limit;
  const ZeroResult z = find_smallest_zero(series, zo);
  PressureResult r{c.params.tau, c.params.n_max, z.z_star, z.pressure, z.dz, z.tail,
                   z.tail < Defaults::tail_tol};
  write_file(out / "pressure.json", json_text(to_json(r)));
  return status_of(r.converged, log, "pressure");
}

int cmd_srb_average(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const ResponseResult r =
      analyze_response(c.family, c.observable, c.params.tau, c.params.n_max, response_options(c));
  write_file(out / "srb_average.json", json_text(to_json(r)));
  return status_of(r.converged, log, "srb-average");
}

int cmd_linear_response(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const ResponseResult r =
      analyze_response(c.family, c.observable, c.params.tau, c.params.n_max, response_options(c));
  write_file(out / "linear_response.json", json_text(to_json(r)));
  write_file(out / "convergence.csv", convergence_csv(r.convergence));
  return status_of(r.converged, log, "linear-response");
}

int cmd_oracle_compare(const RunConfig& c, const fs::path& out, std::ostream& log) {
  const ResponseResult r =
      analyze_response(c.family, c.observable, c.params.tau, c.params.n_max, response_options(c));
  const unsigned w = c.params.workers;
  const double ulam_avg =
      ulam_srb_average(build_ulam(c.family, c.params.tau, c.params.bins, w), c.observable);
  const double ulam_fd =
      ulam_response_fd(based_family(c), c.observable, c.params.fd_step, c.params.bins, w);
  json j;
  j["schema"] = "dyndet.oracle_compare/1";
  j["tau"] = c.params.tau;
  j["n_max"] = c.params.n_max;
  j["bins"] = c.params.bins;
  j["fd_step"] = c.params.fd_step;
  j["srb_average"] = {{"determinant", r.srb_average},
                      {"ulam", ulam_avg},
                      {"abs_diff", std::fabs(r.srb_average - ulam_avg)}};
  j["linear_response"] = {{"determinant", r.linear_response},
                          {"ulam_fd", ulam_fd},
                          {"abs_diff", std::fabs(r.linear_response - ulam_fd)}};
  j["converged"] = r.converged;
  j["flags"] = r.flags;
  write_file(out / "oracle_compare.json", json_text(j));
  return status_of(r.converged, log, "oracle-compare");
}

int cmd_ulam_density(const RunConfig& c, const fs::path& out, std::ostream&) {
  const auto density =
      stationary_density(build_ulam(c.family, c.params.tau, c.params.bins, c.params.workers));
  write_file(out / "density.csv", density_csv(density));
  return kExitOk;
}

using Handler = int (*)(const RunConfig&, const fs::path&, std::ostream&);

struct CommandEntry {
  const char* name;
  Handler handler;
};

constexpr CommandEntry kCommands[] = {
    {"periodic-points", cmd_periodic_points}, {"traces", cmd_traces},
    {"det-coeffs", cmd_det_coeffs},           {"pressure", cmd_pressure},
    {"srb-average", cmd_srb_average},         {"linear-response", cmd_linear_response},
    {"oracle-compare", cmd_oracle_compare},   {"ulam-density", cmd_ulam_density},
};

} // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kCommands)
      v.emplace_back(c.name);
    return v;
  }();
  return names;
}

int run(const std::string& command, const RunConfig& config, std::ostream& log) {
  const CommandEntry* entry = nullptr;
  for (const auto& c : kCommands)
    if (command == c.name)
      entry = &c;
  if (!entry) {
    log << "error: unknown command '" << command << "'\n";
    return kExitValidation;
  }
  try {
    validate_config(config);
  } catch (const Error& e) {
    log << "error: invalid config: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const fs::path out = config.params.out_dir;
    fs::create_directories(out);
    return entry->handler(config, out, log);
  } catch (const std::exception& e) {
    log << "error: " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed_points_csv(const FixedPointSet& set) {
  std::ostringstream os;
  os << "itinerary,x,residual,forward_residual\n";
  for (const auto& p : set.points)
    os << itinerary_text(p.itinerary, set.degree) << ',' << format_double(p.x) << ','
       << format_double(p.residual) << ',' << format_double(p.forward_residual) << '\n';
  return os.str();
}

std::string traces_csv(std::span<const TraceTerms> table) {
  std::ostringstream os;
  os << "n,b,bu,btau,butau\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    os << i + 1 << ',' << format_double(table[i].b) << ',' << format_double(table[i].bu) << ','
       << format_double(table[i].btau) << ',' << format_double(table[i].butau) << '\n';
  return os.str();
}

std::string det_coeffs_csv(const DetSeries& s) {
  std::ostringstream os;
  os << "n,a,au,atau,autau\n";
  for (int n = 0; n <= s.n_max; ++n)
    os << n << ',' << format_double(s.a[n]) << ',' << format_double(s.au[n]) << ','
       << format_double(s.atau[n]) << ',' << format_double(s.autau[n]) << '\n';
  return os.str();
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "n";
  for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
    os << ",sum_" << series_name(static_cast<ResponseSeries>(k));
  os << ",srb_average,linear_response\n";
  for (const auto& row : report.rows) {
    os << row.n;
    for (double s : row.sums)
      os << ',' << format_double(s);
    os << ',' << format_double(row.srb_average) << ',' << format_double(row.linear_response)
       << '\n';
  }
  return os.str();
}

std::string density_csv(const std::vector<double>& density) {
  std::ostringstream os;
  os << "bin,value\n";
  for (std::size_t i = 0; i < density.size(); ++i)
    os << i << ',' << format_double(density[i]) << '\n';
  return os.str();
}

json to_json(const PressureResult& r) {
  return {{"schema", "dyndet.pressure/1"},
          {"tau", r.tau},
          {"n_max", r.n_max},
          {"z_star", r.z_star},
          {"pressure", r.pressure},
          {"dz", r.dz},
          {"tail", r.tail},
          {"converged", r.converged}};
}

PressureResult pressure_from_json(const json& j) {
  if (j.at("schema") != "dyndet.pressure/1")
    throw InputError("not a pressure result");
  PressureResult r;
  r.tau = j.at("tau").get<double>();
  r.n_max = j.at("n_max").get<int>();
  r.z_star = j.at("z_star").get<double>();
  r.pressure = j.at("pressure").get<double>();
  r.dz = j.at("dz").get<double>();
  r.tail = j.at("tail").get<double>();
  r.converged = j.at("converged").get<bool>();
  return r;
}

json to_json(const ResponseResult& r) {
  json series = json::object();
  for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
    series[series_name(static_cast<ResponseSeries>(k))] = {
        {"rate", r.convergence.series[k].rate},
        {"tail", number_or_null(r.convergence.series[k].tail)}};
  json rows = json::array();
  for (const auto& row : r.convergence.rows) {
    json jr = {{"n", row.n}};
    for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
      jr[std::string("sum_") + series_name(static_cast<ResponseSeries>(k))] = row.sums[k];
    jr["srb_average"] = number_or_null(row.srb_average);
    jr["linear_response"] = number_or_null(row.linear_response);
    rows.push_back(std::move(jr));
  }
  return {{"schema", "dyndet.response/1"},
          {"tau", r.tau},
          {"n_max", r.n_max},
          {"srb_average", r.srb_average},
          {"linear_response", r.linear_response},
          {"linear_response_raw", r.linear_response_raw},
          {"z_star", number_or_null(r.z_star)},
          {"converged", r.converged},
          {"flags", r.flags},
          {"series", std::move(series)},
          {"partial_sums", std::move(rows)}};
}

ResponseResult response_from_json(const json& j) {
  if (j.at("schema") != "dyndet.response/1")
    throw InputError("not a response result");
  ResponseResult r;
  r.tau = j.at("tau").get<double>();
  r.n_max = j.at("n_max").get<int>();
  r.srb_average = j.at("srb_average").get<double>();
  r.linear_response = j.at("linear_response").get<double>();
  r.linear_response_raw = j.at("linear_response_raw").get<double>();
  r.z_star = number_from(j.at("z_star"));
  r.converged = j.at("converged").get<bool>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  const json& series = j.at("series");
  for (std::size_t k = 0; k < kResponseSeriesCount; ++k) {
    const json& s = series.at(series_name(static_cast<ResponseSeries>(k)));
    r.convergence.series[k] = {s.at("rate").get<double>(), number_from(s.at("tail"))};
  }
  for (const json& jr : j.at("partial_sums")) {
    PartialSumRow row;
    row.n = jr.at("n").get<int>();
    for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
      row.sums[k] = jr.at(std::string("sum_") + series_name(static_cast<ResponseSeries>(k)))
                        .get<double>();
    row.srb_average = number_from(jr.at("srb_average"));
    row.linear_response = number_from(jr.at("linear_response"));
    r.convergence.rows.push_back(row);
  }
  return r;
}

} // namespace dyndet
