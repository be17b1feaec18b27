#include "dyndet/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dyndet/compensated_sum.hpp"
#include "dyndet/errors.hpp"
#include "dyndet/parallel.hpp"

namespace dyndet {

namespace {

/// Plain bisection for an increasing function on [lo, hi] with
/// f(lo) <= target <= f(hi), run to double resolution.
template <typename Fn>
double bisect_increasing(Fn&& f, double target, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (f(mid) < target ? lo : hi) = mid;
  }
  return std::fabs(f(lo) - target) <= std::fabs(f(hi) - target) ? lo : hi;
}

} // namespace

double UlamModel::row_sum(int row) const {
  double s = 0.0;
  for (std::size_t k = row_start[row]; k < row_start[row + 1]; ++k)
    s += values[k];
  return s;
}

double UlamModel::entry(int row, int column) const {
  for (std::size_t k = row_start[row]; k < row_start[row + 1]; ++k)
    if (columns[k] == column)
      return values[k];
  return 0.0;
}

UlamModel build_ulam(const TrigMapFamily& family, double tau, int bins, unsigned workers) {
  if (bins < 2)
    throw InputError("Ulam model needs at least 2 bins");
  const CircleMap map = family.at(tau);
  const double m = bins;
  auto lift = [&](double x) { return map.lift(x); };

  std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(bins));
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const double a = static_cast<double>(i) / m;
    const double b = static_cast<double>(i + 1) / m;
    const double lb = lift(b);
    auto k = static_cast<long long>(std::floor(lift(a) * m));
    double x_prev = a;
    std::vector<std::pair<int, double>> entries;
    while (true) {
      const double y_next = static_cast<double>(k + 1) / m;
      const auto column = static_cast<int>(((k % bins) + bins) % bins);
      if (y_next >= lb) {
        entries.emplace_back(column, (b - x_prev) * m);
        break;
      }
      const double x_next = bisect_increasing(lift, y_next, x_prev, b);
      entries.emplace_back(column, (x_next - x_prev) * m);
      x_prev = x_next;
      ++k;
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    auto& row = rows[i];
    for (const auto& e : entries) {
      if (e.second <= 0.0)
        continue;
      if (!row.empty() && row.back().first == e.first)
        row.back().second += e.second;
      else
        row.push_back(e);
    }
  });

  UlamModel model;
  model.bins = bins;
  model.tau = tau;
  model.row_start.reserve(rows.size() + 1);
  model.row_start.push_back(0);
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) {
      model.columns.push_back(c);
      model.values.push_back(v);
    }
    model.row_start.push_back(model.columns.size());
  }
  return model;
}

std::vector<double> stationary_density(const UlamModel& model, double tolerance,
                                       int max_iterations) {
  const auto m = static_cast<std::size_t>(model.bins);
  std::vector<double> density(m, 1.0), next(m);
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = model.row_start[i]; k < model.row_start[i + 1]; ++k)
        next[model.columns[k]] += density[i] * model.values[k];
    CompensatedSum total;
    for (double v : next)
      total += v;
    const double scale = static_cast<double>(m) / total.value();
    double change = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      next[j] *= scale;
      change = std::max(change, std::fabs(next[j] - density[j]));
    }
    density.swap(next);
    if (change < tolerance)
      return density;
  }
  throw ConvergenceError("Ulam power iteration did not converge in " +
                         std::to_string(max_iterations) + " iterations");
}

double ulam_srb_average(const std::vector<double>& density, const Observable& g) {
  const double m = static_cast<double>(density.size());
  CompensatedSum sum;
  for (std::size_t i = 0; i < density.size(); ++i)
    sum += density[i] * g((static_cast<double>(i) + 0.5) / m);
  return sum.value() / m;
}

double ulam_srb_average(const UlamModel& model, const Observable& g) {
  return ulam_srb_average(stationary_density(model), g);
}

double ulam_response_fd(const TrigMapFamily& family, const Observable& g, double h, int bins,
                        unsigned workers) {
  const double plus = ulam_srb_average(build_ulam(family, h, bins, workers), g);
  const double minus = ulam_srb_average(build_ulam(family, -h, bins, workers), g);
  return (plus - minus) / (2.0 * h);
}

std::vector<double> brute_fixed_points(const TrigMapFamily& family, double tau, int n, int grid) {
  if (n < 1)
    throw InputError("period n must be >= 1");
  const CircleMap map = family.at(tau);
  const double count = std::pow(static_cast<double>(map.degree()), n) - 1.0;
  if (count + 1.0 > grid / 10.0)
    throw InputError("grid of " + std::to_string(grid) + " points too coarse for degree^n = " +
                     std::to_string(count + 1.0));
  auto excess = [&](double x) {
    double y = x;
    for (int k = 0; k < n; ++k)
      y = map.lift(y);
    return y - x;
  };

  // excess is increasing and gains degree^n - 1 over [0, 1].
  const double g0 = excess(0.0);
  const double first = std::ceil(g0);
  const double last = g0 + count; // integers j in [g0, g0 + count) are crossed once
  std::vector<double> points;
  double x_lo = 0.0;
  double g_lo = g0;
  double next_int = first;
  for (int i = 1; i <= grid && next_int < last; ++i) {
    const double x_hi = static_cast<double>(i) / grid;
    const double g_hi = i == grid ? g0 + count : excess(x_hi);
    while (next_int < last && next_int < g_hi) {
      if (next_int == g_lo)
        points.push_back(x_lo);
      else
        points.push_back(bisect_increasing(excess, next_int, x_lo, x_hi));
      next_int += 1.0;
    }
    x_lo = x_hi;
    g_lo = g_hi;
  }
  if (static_cast<double>(points.size()) != count)
    throw ConsistencyError("grid scan found " + std::to_string(points.size()) +
                           " crossings, expected " + std::to_string(count));
  for (double& p : points)
    p = reduce_mod1(p);
  std::sort(points.begin(), points.end());
  return points;
}

} // namespace dyndet
