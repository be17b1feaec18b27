#include "dyndet/periodic_points.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "dyndet/errors.hpp"
#include "dyndet/parallel.hpp"
#include "root_finding.hpp"

namespace dyndet {

namespace {

using Extended = long double;

double solve_lift(const CircleMap& map, double target, double lo, double hi, double guess) {
  auto fn = [&](double x) {
    const Jet<double> j = map.jet(x);
    return std::pair{j.value, j.d1};
  };
  return detail::solve_increasing<double>(fn, target, lo, hi, guess);
}

std::uint64_t checked_power(int base, int exponent, std::size_t cap) {
  std::uint64_t p = 1;
  for (int i = 0; i < exponent; ++i) {
    p *= static_cast<std::uint64_t>(base);
    if (p > cap)
      throw InputError("degree^n = " + std::to_string(base) + "^" + std::to_string(exponent) +
                       " exceeds the itinerary cap " + std::to_string(cap));
  }
  return p;
}

} // namespace

double BranchPartition::inverse(int branch, double y) const {
  const double target = y + static_cast<double>(offsets[branch]);
  const double lo = cuts[branch];
  const double hi = cuts[branch + 1];
  const double guess = lo + (y - anchor) * (hi - lo);
  return solve_lift(map, target, lo, hi, guess);
}

BranchPartition branch_partition(const TrigMapFamily& family, double tau) {
  BranchPartition part{family.at(tau), tau, 0.0, expansion_bound(family), {}, {}};
  const CircleMap& map = part.map;
  const int d = map.degree();

  // L(x) - x increases by d - 1 over a unit interval, so it meets
  // j0 = ceil(L(0)) somewhere in [0, 1].
  const double l0 = map.lift(0.0);
  const double j0 = std::ceil(l0);
  if (l0 == j0) {
    part.anchor = 0.0;
  } else {
    auto fn = [&](double x) {
      const Jet<double> j = map.jet(x);
      return std::pair{j.value - x, j.d1 - 1.0};
    };
    part.anchor = detail::solve_increasing<double>(fn, j0, 0.0, 1.0, 0.5);
    if (part.anchor >= 1.0)
      part.anchor = 0.0;
  }
  const double a = part.anchor;
  // L(anchor) = anchor + base.
  const auto base = static_cast<std::int64_t>(std::llround(j0));
  part.cuts.resize(static_cast<std::size_t>(d) + 1);
  part.offsets.resize(static_cast<std::size_t>(d));
  part.cuts[0] = a;
  part.cuts[d] = a + 1.0;
  for (int w = 0; w < d; ++w)
    part.offsets[w] = base + w;
  for (int w = 1; w < d; ++w) {
    const double target = a + static_cast<double>(base + w);
    const double guess = a + static_cast<double>(w) / d;
    part.cuts[w] = solve_lift(map, target, part.cuts[w - 1], a + 1.0, guess);
  }
  return part;
}

PeriodicResidual periodic_residual(const CircleMap& map, double x, int n) {
  Extended z = x;
  Extended deriv = 1;
  for (int k = 0; k < n; ++k) {
    const Jet<Extended> j = map.jet<Extended>(z);
    deriv *= j.d1;
    z = j.value - std::floor(j.value);
  }
  Extended diff = z - static_cast<Extended>(x);
  diff -= std::nearbyint(diff);
  const Extended forward = std::fabs(diff);
  return {static_cast<double>(forward), static_cast<double>(forward / (deriv - 1))};
}

double inverse_branch_point_lifted(const BranchPartition& partition,
                                   std::span<const int> itinerary, double tol) {
  const int n = static_cast<int>(itinerary.size());
  if (n < 1)
    throw InputError("itinerary must have length >= 1");
  for (int w : itinerary)
    if (w < 0 || w >= partition.degree())
      throw InputError("itinerary symbol out of range");

  // One cycle contracts by at least expansion^-n <= expansion^-1.
  const int cap = static_cast<int>(std::ceil(60.0 / std::log2(partition.expansion))) + n;

  const double a = partition.anchor;
  double x = a + 0.5;
  bool converged = false;
  for (int iter = 0; iter < cap; ++iter) {
    double y = x;
    for (int k = n - 1; k >= 0; --k)
      y = partition.inverse(itinerary[k], y);
    const double delta = std::fabs(y - x);
    x = y;
    if (delta < tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("inverse-branch iteration did not contract within " +
                           std::to_string(cap) + " cycles (expansion violated?)");

  // Newton on F(x) = L^n(x) - x - J along the itinerary, in extended precision.
  const CircleMap& map = partition.map;
  Extended xe = x;
  for (int round = 0; round < 2; ++round) {
    Extended z = xe;
    Extended deriv = 1;
    for (int k = 0; k < n; ++k) {
      const Jet<Extended> j = map.jet<Extended>(z);
      deriv *= j.d1;
      z = j.value - static_cast<Extended>(partition.offsets[itinerary[k]]);
    }
    const Extended f = z - xe;
    xe -= f / (deriv - 1);
  }
  return static_cast<double>(xe);
}

double inverse_branch_point(const BranchPartition& partition, std::span<const int> itinerary,
                            double tol) {
  return reduce_mod1(inverse_branch_point_lifted(partition, itinerary, tol));
}

std::vector<int> itinerary_from_index(std::uint64_t code, int degree, int n) {
  std::vector<int> it(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    it[k] = static_cast<int>(code % static_cast<std::uint64_t>(degree));
    code /= static_cast<std::uint64_t>(degree);
  }
  return it;
}

std::vector<double> periodic_orbit(const FixedPointSet& set, std::size_t index) {
  // After merging, points[code] holds the itinerary with lexicographic index
  // `code` for every code < degree^n - 1, and rotating left by one symbol maps
  // code to code * degree mod (degree^n - 1).
  const auto d = static_cast<std::uint64_t>(set.degree);
  const std::uint64_t modulus = set.points.size();
  if (index >= modulus)
    throw InputError("periodic point index out of range");
  std::vector<double> orbit(static_cast<std::size_t>(set.period));
  std::uint64_t code = index;
  for (auto& x : orbit) {
    x = set.points[code].x;
    code = modulus == 1 ? 0 : (code * d) % modulus;
  }
  const auto& first = set.points[index].itinerary;
  const auto& second = set.points[orbit.size() > 1 ? (index * d) % modulus : index].itinerary;
  if (!std::equal(first.begin() + 1, first.end(), second.begin()))
    throw ConsistencyError("fixed point set is not indexed by itinerary");
  return orbit;
}

FixedPointSet enumerate_fixed_points(const TrigMapFamily& family, double tau, int n,
                                     const EnumerationOptions& options) {
  if (n < 1)
    throw InputError("period n must be >= 1");
  const int d = family.degree();
  const std::uint64_t count = checked_power(d, n, options.max_itineraries);
  const BranchPartition partition = branch_partition(family, tau);

  std::vector<FixedPointRecord> slots(count);
  parallel_for(count, options.workers, [&](std::size_t i) {
    FixedPointRecord& rec = slots[i];
    rec.itinerary = itinerary_from_index(i, d, n);
    rec.x = inverse_branch_point(partition, rec.itinerary);
    const PeriodicResidual r = periodic_residual(partition.map, rec.x, n);
    rec.residual = r.point;
    rec.forward_residual = r.forward;
  });

  // Merge: sort by position, mark the later itinerary of any close pair.
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return slots[l].x < slots[r].x; });
  std::vector<char> duplicate(count, 0);
  auto mark = [&](std::size_t l, std::size_t r) {
    if (circle_distance(slots[l].x, slots[r].x) < options.merge_tol)
      duplicate[std::max(l, r)] = 1;
  };
  for (std::size_t k = 0; k + 1 < count; ++k)
    mark(order[k], order[k + 1]);
  if (count > 1)
    mark(order.front(), order.back());

  FixedPointSet out;
  out.degree = d;
  out.period = n;
  out.tau = tau;
  out.points.reserve(count);
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (duplicate[i])
      continue;
    worst = std::max(worst, slots[i].residual);
    out.points.push_back(std::move(slots[i]));
  }
  if (out.points.size() != count - 1)
    throw ConsistencyError("Fix(T^" + std::to_string(n) + ") has " +
                           std::to_string(out.points.size()) + " points after merging, expected " +
                           std::to_string(count - 1));
  if (!(worst < options.residual_tol))
    throw ConsistencyError("periodic point residual " + std::to_string(worst) +
                           " exceeds tolerance");
  return out;
}

} // namespace dyndet
