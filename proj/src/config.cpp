#include "dyndet/config.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "dyndet/errors.hpp"

namespace dyndet {

namespace {

using nlohmann::json;

double parse_number(const json& v, const std::string& field) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    double out = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
      ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec == std::errc() && ptr == last)
      return out;
  }
  throw InputError("field '" + field + "': expected a number or decimal string, got " + v.dump());
}

int parse_int(const json& v, const std::string& field) {
  if (v.is_number_integer())
    return v.get<int>();
  const double d = parse_number(v, field);
  if (d != static_cast<int>(d))
    throw InputError("field '" + field + "': expected an integer, got " + v.dump());
  return static_cast<int>(d);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError("missing field '" + where + key + "'");
  return obj.at(key);
}

TauPolynomial parse_polynomial(const json& v, const std::string& field) {
  if (!v.is_array())
    return TauPolynomial::constant(parse_number(v, field));
  std::vector<double> c;
  for (std::size_t i = 0; i < v.size(); ++i)
    c.push_back(parse_number(v[i], field + "[" + std::to_string(i) + "]"));
  if (c.empty())
    c.push_back(0.0);
  return TauPolynomial(std::move(c));
}

TrigMapFamily parse_family(const json& m) {
  const int degree = parse_int(require(m, "degree", "map."), "map.degree");
  const TauPolynomial constant =
      m.contains("constant") ? parse_polynomial(m.at("constant"), "map.constant")
                             : TauPolynomial::constant(0.0);
  std::vector<HarmonicFamily> harmonics;
  if (m.contains("harmonics")) {
    const json& hs = m.at("harmonics");
    if (!hs.is_array())
      throw InputError("field 'map.harmonics': expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string where = "map.harmonics[" + std::to_string(i) + "].";
      HarmonicFamily h;
      h.k = parse_int(require(hs[i], "k", where), where + "k");
      h.sin_coeff = hs[i].contains("sin") ? parse_polynomial(hs[i].at("sin"), where + "sin")
                                          : TauPolynomial::constant(0.0);
      h.cos_coeff = hs[i].contains("cos") ? parse_polynomial(hs[i].at("cos"), where + "cos")
                                          : TauPolynomial::constant(0.0);
      harmonics.push_back(std::move(h));
    }
  }
  const json& dom = require(m, "tau_domain", "map.");
  if (!dom.is_array() || dom.size() != 2)
    throw InputError("field 'map.tau_domain': expected [lo, hi]");
  const TauDomain domain{parse_number(dom[0], "map.tau_domain[0]"),
                         parse_number(dom[1], "map.tau_domain[1]")};
  return TrigMapFamily(degree, constant, std::move(harmonics), domain);
}

Observable parse_observable(const json& o) {
  const double c0 = o.contains("constant") ? parse_number(o.at("constant"), "observable.constant")
                                           : 0.0;
  std::vector<Harmonic> harmonics;
  if (o.contains("harmonics")) {
    const json& hs = o.at("harmonics");
    if (!hs.is_array())
      throw InputError("field 'observable.harmonics': expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string where = "observable.harmonics[" + std::to_string(i) + "].";
      Harmonic h;
      h.k = parse_int(require(hs[i], "k", where), where + "k");
      h.sin_coeff = hs[i].contains("sin") ? parse_number(hs[i].at("sin"), where + "sin") : 0.0;
      h.cos_coeff = hs[i].contains("cos") ? parse_number(hs[i].at("cos"), where + "cos") : 0.0;
      harmonics.push_back(h);
    }
  }
  return Observable(c0, std::move(harmonics));
}

Weight parse_weight(const json& w) {
  const std::string kind = w.value("kind", std::string("srb"));
  if (kind == "srb")
    return Weight::srb(w.contains("u") ? parse_number(w.at("u"), "weight.u") : Defaults::u);
  if (kind == "raw")
    return {w.contains("observable_scale")
                ? parse_number(w.at("observable_scale"), "weight.observable_scale")
                : 0.0,
            w.contains("log_derivative_scale")
                ? parse_number(w.at("log_derivative_scale"), "weight.log_derivative_scale")
                : 0.0};
  throw InputError("field 'weight.kind': expected \"srb\" or \"raw\", got \"" + kind + "\"");
}

RunParams parse_params(const json& p) {
  RunParams out;
  if (!p.is_object())
    return out;
  if (p.contains("n_max"))
    out.n_max = parse_int(p.at("n_max"), "params.n_max");
  if (p.contains("tau"))
    out.tau = parse_number(p.at("tau"), "params.tau");
  if (p.contains("bins"))
    out.bins = parse_int(p.at("bins"), "params.bins");
  if (p.contains("fd_step"))
    out.fd_step = parse_number(p.at("fd_step"), "params.fd_step");
  if (p.contains("period"))
    out.period = parse_int(p.at("period"), "params.period");
  if (p.contains("workers")) {
    const int w = parse_int(p.at("workers"), "params.workers");
    if (w < 1)
      throw InputError("field 'params.workers': must be >= 1");
    out.workers = static_cast<unsigned>(w);
  }
  if (p.contains("out_dir"))
    out.out_dir = p.at("out_dir").get<std::string>();
  return out;
}

} // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object())
    throw InputError("config must be a JSON object");
  const int version = parse_int(require(doc, "schema_version", ""), "schema_version");
  if (version != Defaults::schema_version)
    throw InputError("unsupported schema_version " + std::to_string(version));
  RunConfig cfg{parse_family(require(doc, "map", "")),
                doc.contains("observable") ? parse_observable(doc.at("observable")) : Observable(),
                doc.contains("weight") ? parse_weight(doc.at("weight")) : Weight::srb(0.0),
                doc.contains("params") ? parse_params(doc.at("params")) : RunParams{}};
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

void validate_config(const RunConfig& config) {
  expansion_bound(config.family);
  const RunParams& p = config.params;
  if (p.n_max < 1)
    throw InputError("n_max must be >= 1");
  if (p.period < 1)
    throw InputError("period must be >= 1");
  if (p.bins < 2)
    throw InputError("bins must be >= 2");
  if (!(p.fd_step > 0.0))
    throw InputError("fd_step must be > 0");
  if (!config.family.tau_domain().contains(p.tau))
    throw InputError("tau = " + std::to_string(p.tau) + " outside tau_domain");
}

} // namespace dyndet
