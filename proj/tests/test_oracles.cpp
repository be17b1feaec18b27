#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "dyndet/errors.hpp"
#include "dyndet/oracles.hpp"
#include "families.hpp"

using namespace dyndet;
using namespace dyndet::testing;
using doctest::Approx;

TEST_CASE("Ulam matrix is row-stochastic") {
  const auto model = build_ulam(perturbed_doubling(), 0.05, 512);
  for (int i = 0; i < model.bins; ++i)
    CHECK(model.row_sum(i) == Approx(1.0).epsilon(1e-12));
  const auto d = build_ulam(doubling(), 0.0, 8);
  CHECK(d.entry(0, 0) == Approx(0.5));
  CHECK(d.entry(0, 1) == Approx(0.5));
  CHECK(d.entry(5, 2) == Approx(0.5));
  CHECK(d.entry(5, 0) == 0.0);
}

TEST_CASE("uniform densities of linear maps") {
  for (int degree : {2, 3}) {
    const auto density = stationary_density(build_ulam(TrigMapFamily::multiply(degree), 0.0, 1024));
    for (double v : density)
      CHECK(v == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("perturbed density is positive, normalised and not uniform") {
  const auto density = stationary_density(build_ulam(perturbed_doubling(), 0.05, 4096));
  double sum = 0.0, lo = 1e300, hi = 0.0;
  for (double v : density) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(sum / density.size() == Approx(1.0).epsilon(1e-12));
  CHECK(lo > 0.0);
  CHECK(hi - lo > 1e-3);
}

TEST_CASE("Ulam averages of the doubling map") {
  const auto model = build_ulam(doubling(), 0.0, 1 << 12);
  CHECK(std::fabs(ulam_srb_average(model, cosine())) < 1e-6);
  CHECK(ulam_srb_average(model, constant_observable(2.5)) == Approx(2.5).epsilon(1e-14));
}

TEST_CASE("Ulam averages converge under refinement") {
  const auto fam = perturbed_doubling();
  const double coarse = ulam_srb_average(build_ulam(fam, 0.05, 1 << 9), cosine());
  const double mid = ulam_srb_average(build_ulam(fam, 0.05, 1 << 11), cosine());
  const double fine = ulam_srb_average(build_ulam(fam, 0.05, 1 << 13), cosine());
  CHECK(std::fabs(fine - mid) < std::fabs(mid - coarse) + 1e-12);
}

TEST_CASE("Ulam finite-difference response") {
  CHECK(std::fabs(ulam_response_fd(perturbed_doubling(), constant_observable(1.0), 0.01, 1 << 10)) <
        1e-12);
  CHECK(std::fabs(ulam_response_fd(shifted_doubling(0.4), cosine(), 0.01, 1 << 12)) < 5e-3);
}

TEST_CASE("grid-scan fixed points") {
  const auto seven = brute_fixed_points(doubling(), 0.0, 3, 100000);
  REQUIRE(seven.size() == 7);
  for (int j = 0; j < 7; ++j)
    CHECK(std::fabs(seven[j] - j / 7.0) < 1e-14);
  const auto one = brute_fixed_points(doubling(), 0.0, 1, 1000);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 0.0);
  CHECK_THROWS_AS(brute_fixed_points(doubling(), 0.0, 12, 1000), InputError);
}
