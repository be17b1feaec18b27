#include <cmath>

#include "doctest.h"

#include "dyndet/errors.hpp"
#include "dyndet/oracles.hpp"
#include "dyndet/response.hpp"
#include "families.hpp"

using namespace dyndet;
using namespace dyndet::testing;
using doctest::Approx;

TEST_CASE("SRB averages of the doubling map") {
  for (double c : {1.0, -2.5, 0.3})
    CHECK(srb_average(doubling(), constant_observable(c), 0.0, 12) == Approx(c).epsilon(1e-12));
  CHECK(std::fabs(srb_average(doubling(), cosine(), 0.0, 12)) < 1e-10);
}

TEST_CASE("SRB average of the perturbed family against Ulam") {
  const auto fam = perturbed_doubling();
  const double det = srb_average(fam, cosine(), 0.05, 12);
  const double ulam = ulam_srb_average(build_ulam(fam, 0.05, 1 << 13), cosine());
  CHECK(std::fabs(det - ulam) < 1e-3);
}

TEST_CASE("linear response of exact-derivative perturbations vanishes") {
  const auto fam = perturbed_doubling();
  CHECK(std::fabs(linear_response(fam, constant_observable(1.7), 12)) < 1e-12);
  CHECK(std::fabs(linear_response(shifted_doubling(0.4), cosine(), 12)) < 1e-10);
}

TEST_CASE("linear response matches a central difference of SRB averages") {
  const auto fam = perturbed_doubling();
  const double h = 1e-3;
  for (double tau0 : {0.0, 0.05}) {
    const auto based = fam.rebased(tau0);
    const double lr = linear_response(based, cosine(), 12);
    const double fd =
        (srb_average(based, cosine(), h, 12) - srb_average(based, cosine(), -h, 12)) / (2 * h);
    CHECK(std::fabs(lr - fd) < 1e-5);
  }
}

TEST_CASE("series and Horner forms agree") {
  const auto r = analyze_response(perturbed_doubling(), cosine(), 0.05, 12);
  CHECK(std::fabs(r.linear_response - r.linear_response_raw) < 1e-14);
  CHECK(r.converged);
  CHECK(r.flags.empty());
  CHECK(r.z_star == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("convergence report") {
  const auto doubling_report = analyze_response(doubling(), cosine(), 0.0, 12).convergence;
  REQUIRE(doubling_report.rows.size() == 13);
  for (int n = 2; n <= 12; ++n)
    for (std::size_t k = 0; k < kResponseSeriesCount; ++k)
      CHECK(std::fabs(doubling_report.rows[n].sums[k] - doubling_report.rows[12].sums[k]) < 1e-15);
  CHECK(doubling_report.series[0].rate == 0.0);

  const auto s = response_series(perturbed_doubling(), cosine(), 0.05, 12);
  const auto fit = fit_geometric(s.a);
  CHECK(fit.rate < 0.9);
  const auto report = convergence_report(s);
  CHECK(report.max_tail() < 1e-8);
}

TEST_CASE("degenerate and truncated series are reported") {
  DetSeries flat;
  flat.n_max = 1;
  flat.a = {1.0, 0.0};
  flat.au = {0.0, 0.0};
  flat.atau = {0.0, 0.0};
  flat.autau = {0.0, 0.0};
  CHECK_THROWS_AS(analyze_series(flat, 0.0), DegenerateZeroError);

  // A slowly decaying series cannot certify its tail.
  DetSeries slow;
  slow.n_max = 8;
  for (int n = 0; n <= 8; ++n) {
    slow.a.push_back(n == 0 ? 1.0 : -std::pow(0.5, n));
    slow.au.push_back(n == 0 ? 0.0 : std::pow(0.5, n));
    slow.atau.push_back(0.0);
    slow.autau.push_back(0.0);
  }
  const auto r = analyze_series(slow, 0.0);
  CHECK_FALSE(r.converged);
  bool flagged = false;
  for (const auto& f : r.flags)
    flagged = flagged || f == "unconverged:au";
  CHECK(flagged);
}
