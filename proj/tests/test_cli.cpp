#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "dyndet/cli.hpp"
#include "dyndet/config.hpp"
#include "dyndet/errors.hpp"
#include "families.hpp"

using namespace dyndet;
using namespace dyndet::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kPerturbed = R"({
  "schema_version": 1,
  "map": {"degree": 2, "harmonics": [{"k": 1, "sin": [0, "0.15915494309189535"]}],
          "tau_domain": [-0.1, 0.1]},
  "observable": {"harmonics": [{"k": 1, "cos": 1}]},
  "params": {"n_max": 12}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dyndet_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

RunConfig doubling_config() {
  return RunConfig{doubling(), cosine(), Weight::srb(0.0), RunParams{}};
}

} // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(json::parse(kPerturbed));
  CHECK(c.family.degree() == 2);
  CHECK(c.family.harmonics()[0].sin_coeff.value(1.0) == doctest::Approx(1.0 / kTwoPi));
  CHECK(c.observable(0.0) == 1.0);
  CHECK(c.weight.is_srb());
  CHECK(c.params.n_max == 12);
  CHECK(c.params.bins == Defaults::bins);
  CHECK(c.params.fd_step == Defaults::fd_step);
}

TEST_CASE("config errors name the field") {
  auto error_of = [](const char* text) -> std::string {
    try {
      parse_config(json::parse(text));
    } catch (const InputError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of(R"({"map": {"degree": 2, "tau_domain": [0, 0]}})").find("schema_version") !=
        std::string::npos);
  CHECK(error_of(R"({"schema_version": 2, "map": {}})").find("schema_version") !=
        std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "map": {"degree": "two", "tau_domain": [0, 0]}})")
            .find("map.degree") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "map": {"degree": 2}})").find("tau_domain") !=
        std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "map": {"degree": 2, "tau_domain": [0, 0]},
                     "weight": {"kind": "other"}})")
            .find("weight.kind") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InputError);
}

TEST_CASE("validation rejects non-expanding maps and out-of-domain tau") {
  RunConfig c = parse_config(json::parse(kPerturbed));
  c.params.tau = 0.5;
  std::ostringstream log;
  CHECK(run("srb-average", c, log) == kExitValidation);
  c.params.tau = 0.0;
  CHECK(run("no-such-command", c, log) == kExitValidation);

  RunConfig flat = doubling_config();
  flat.family = TrigMapFamily(2, TauPolynomial::constant(0.0),
                              {{1, TauPolynomial::constant(0.5), TauPolynomial::constant(0.0)}},
                              {0.0, 0.0});
  CHECK(run("pressure", flat, log) == kExitValidation);
  CHECK(log.str().find("expanding") != std::string::npos);
}

TEST_CASE("pressure command on the zero-weight doubling map") {
  RunConfig c = doubling_config();
  c.weight = Weight::zero();
  c.params.out_dir = scratch("pressure").string();
  std::ostringstream log;
  REQUIRE(run("pressure", c, log) == kExitOk);
  const json j = json::parse(slurp(fs::path(c.params.out_dir) / "pressure.json"));
  CHECK(j.at("z_star").get<double>() == 0.5);
  CHECK(j.at("pressure").get<double>() == 0.6931471805599453);
  const PressureResult r = pressure_from_json(j);
  CHECK(to_json(r) == j);
}

TEST_CASE("periodic-points command") {
  RunConfig c = doubling_config();
  c.params.period = 2;
  c.params.out_dir = scratch("points").string();
  std::ostringstream log;
  REQUIRE(run("periodic-points", c, log) == kExitOk);
  const std::string csv = slurp(fs::path(c.params.out_dir) / "fixed_points.csv");
  CHECK(csv.rfind("itinerary,x,residual,forward_residual\n00,0,0,0\n01,0.33333333333333", 0) == 0);
  CHECK(csv.find("\n10,0.66666666666666") != std::string::npos);
}

TEST_CASE("linear-response command and JSON round trip") {
  RunConfig c = parse_config(json::parse(kPerturbed));
  c.params.tau = 0.05;
  c.params.out_dir = scratch("response").string();
  std::ostringstream log;
  REQUIRE(run("linear-response", c, log) == kExitOk);
  const json j = json::parse(slurp(fs::path(c.params.out_dir) / "linear_response.json"));
  const ResponseResult r = response_from_json(j);
  CHECK(to_json(r) == j);
  CHECK(r.converged);
  const std::string csv = slurp(fs::path(c.params.out_dir) / "convergence.csv");
  CHECK(csv.rfind("n,sum_a,sum_n_a,sum_au,sum_n_atau,sum_autau,srb_average,linear_response\n", 0) ==
        0);
}

TEST_CASE("csv number format") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.0) == "-2");
}
