#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "dyndet/errors.hpp"
#include "dyndet/oracles.hpp"
#include "dyndet/periodic_points.hpp"
#include "families.hpp"

using namespace dyndet;
using namespace dyndet::testing;
using doctest::Approx;

namespace {

std::vector<double> sorted_points(const FixedPointSet& set) {
  std::vector<double> xs;
  for (const auto& p : set.points)
    xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  return xs;
}

} // namespace

TEST_CASE("branch partition") {
  const auto d = branch_partition(doubling(), 0.0);
  REQUIRE(d.cuts.size() == 3);
  CHECK(d.cuts[0] == 0.0);
  CHECK(d.cuts[1] == 0.5);
  CHECK(d.offsets[0] == 0);
  CHECK(d.offsets[1] == 1);

  const auto fam = perturbed_doubling();
  CHECK(branch_partition(fam, 0.0).cuts[1] == 0.5);

  // Cut solves 2x + 0.05 sin(2 pi x) / (2 pi) = 1; bisection oracle.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (eval_lift(fam, 0.05, mid) < 1.0 ? lo : hi) = mid;
  }
  CHECK(branch_partition(fam, 0.05).cuts[1] == Approx(lo).epsilon(1e-14));
}

TEST_CASE("inverse-branch points of the doubling map") {
  const auto part = branch_partition(doubling(), 0.0);
  CHECK(inverse_branch_point(part, std::vector<int>{0}) == 0.0);
  CHECK(inverse_branch_point(part, std::vector<int>{0, 1}) == Approx(1.0 / 3).epsilon(1e-15));
  CHECK(inverse_branch_point(part, std::vector<int>{1, 0}) == Approx(2.0 / 3).epsilon(1e-15));
  CHECK_THROWS_AS(inverse_branch_point(part, std::vector<int>{2}), InputError);
  CHECK_THROWS_AS(inverse_branch_point(part, std::vector<int>{}), InputError);
}

TEST_CASE("doubling fixed point sets") {
  const auto one = enumerate_fixed_points(doubling(), 0.0, 1);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0].x == 0.0);

  const auto two = sorted_points(enumerate_fixed_points(doubling(), 0.0, 2));
  REQUIRE(two.size() == 3);
  CHECK(two[0] == 0.0);
  CHECK(two[1] == Approx(1.0 / 3).epsilon(1e-15));
  CHECK(two[2] == Approx(2.0 / 3).epsilon(1e-15));

  const auto three = sorted_points(enumerate_fixed_points(doubling(), 0.0, 3));
  REQUIRE(three.size() == 7);
  for (int j = 0; j < 7; ++j)
    CHECK(std::fabs(three[j] - j / 7.0) < 1e-15);
}

TEST_CASE("perturbed family census against the grid-scan oracle") {
  const auto fam = perturbed_doubling();
  const auto set = enumerate_fixed_points(fam, 0.05, 10);
  CHECK(set.points.size() == 1023);
  for (const auto& p : set.points)
    CHECK(p.residual < 1e-12);
  const auto mine = sorted_points(set);
  const auto oracle = brute_fixed_points(fam, 0.05, 10, 1 << 17);
  REQUIRE(oracle.size() == mine.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < mine.size(); ++i)
    worst = std::max(worst, circle_distance(mine[i], oracle[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("closure: T^n maps each point to itself") {
  const auto fam = perturbed_doubling();
  const CircleMap map = fam.at(-0.05);
  const auto set = enumerate_fixed_points(fam, -0.05, 7);
  for (const auto& p : set.points) {
    double y = p.x;
    for (int k = 0; k < 7; ++k)
      y = map(y);
    CHECK(circle_distance(y, p.x) < 1e-12);
  }
}

TEST_CASE("orbits are read off the set by itinerary rotation") {
  const auto fam = perturbed_doubling();
  const CircleMap map = fam.at(0.05);
  const auto set = enumerate_fixed_points(fam, 0.05, 6);
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const auto orbit = periodic_orbit(set, i);
    REQUIRE(orbit.size() == 6);
    for (std::size_t k = 0; k + 1 < orbit.size(); ++k)
      CHECK(circle_distance(map(orbit[k]), orbit[k + 1]) < 1e-13);
    CHECK(circle_distance(map(orbit.back()), orbit.front()) < 1e-13);
  }
}

TEST_CASE("enumeration is independent of worker count") {
  const auto fam = perturbed_doubling();
  EnumerationOptions one, many;
  many.workers = 8;
  const auto a = enumerate_fixed_points(fam, 0.05, 9, one);
  const auto b = enumerate_fixed_points(fam, 0.05, 9, many);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].itinerary == b.points[i].itinerary);
  }
}

TEST_CASE("tripling map and a non-integer anchor") {
  const auto set = enumerate_fixed_points(TrigMapFamily::multiply(3), 0.0, 2);
  CHECK(set.points.size() == 8);
  // L(0) = 0.3 is not an integer, so the fundamental domain starts elsewhere.
  const TrigMapFamily shifted(2, TauPolynomial::constant(0.3),
                              {{1, TauPolynomial::constant(0.02), TauPolynomial::constant(0.0)}},
                              {0.0, 0.0});
  const auto s = enumerate_fixed_points(shifted, 0.0, 5);
  CHECK(s.points.size() == 31);
  const auto oracle = brute_fixed_points(shifted, 0.0, 5, 1 << 12);
  const auto mine = sorted_points(s);
  for (std::size_t i = 0; i < mine.size(); ++i)
    CHECK(circle_distance(mine[i], oracle[i]) < 1e-10);
}

TEST_CASE("itinerary indexing and limits") {
  CHECK(itinerary_from_index(5, 2, 4) == std::vector<int>{0, 1, 0, 1});
  EnumerationOptions small;
  small.max_itineraries = 100;
  CHECK_THROWS_AS(enumerate_fixed_points(doubling(), 0.0, 7, small), InputError);
  CHECK_THROWS_AS(enumerate_fixed_points(doubling(), 0.0, 0), InputError);
}

TEST_CASE("periodic residual of a non-periodic point") {
  const auto r = periodic_residual(doubling().at(0.0), 0.1, 3);
  CHECK(r.point > 1e-3);
  CHECK(periodic_residual(doubling().at(0.0), 1.0 / 7, 3).point < 1e-15);
}
