#include "dyndet/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyndet/errors.hpp"

namespace dyndet {

std::vector<double> det_coefficients(std::span<const double> b, int n_max) {
  if (n_max < 0 || b.size() < static_cast<std::size_t>(n_max))
    throw InputError("det_coefficients: need b_1..b_n_max");
  std::vector<double> a(static_cast<std::size_t>(n_max) + 1, 0.0);
  a[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += a[k] * b[n - k - 1];
    a[n] = -acc / n;
  }
  return a;
}

DetSeries det_coefficient_partials(std::span<const TraceTerms> b_table, int n_max) {
  if (n_max < 1 || b_table.size() < static_cast<std::size_t>(n_max))
    throw InputError("det_coefficient_partials: trace table shorter than n_max");
  DetSeries s;
  s.n_max = n_max;
  s.b_table.assign(b_table.begin(), b_table.begin() + n_max);
  const auto len = static_cast<std::size_t>(n_max) + 1;
  s.a.assign(len, 0.0);
  s.au.assign(len, 0.0);
  s.atau.assign(len, 0.0);
  s.autau.assign(len, 0.0);
  s.a[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double a = 0.0, au = 0.0, at = 0.0, aut = 0.0;
    for (int j = 0; j < n; ++j) {
      const TraceTerms& t = s.b_table[n - j - 1];
      a += s.a[j] * t.b;
      au += s.au[j] * t.b + s.a[j] * t.bu;
      at += s.atau[j] * t.b + s.a[j] * t.btau;
      aut += s.autau[j] * t.b + s.au[j] * t.btau + s.atau[j] * t.bu + s.a[j] * t.butau;
    }
    s.a[n] = -a / n;
    s.au[n] = -au / n;
    s.atau[n] = -at / n;
    s.autau[n] = -aut / n;
  }
  return s;
}

DetSeries det_series(std::span<const double> b, int n_max) {
  if (n_max < 1 || b.size() < static_cast<std::size_t>(n_max))
    throw InputError("det_series: need b_1..b_n_max");
  std::vector<TraceTerms> table(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n)
    table[n - 1].b = b[n - 1];
  return det_coefficient_partials(table, n_max);
}

double recursion_residual(const DetSeries& series, int n) {
  double acc = n * series.a[n];
  for (int j = 0; j < n; ++j)
    acc += series.a[j] * series.b_table[n - j - 1].b;
  return std::fabs(acc);
}

DetValues eval_det(const DetSeries& s, double z) {
  DetValues v;
  for (int n = s.n_max; n >= 0; --n) {
    v.d = v.d * z + s.a[n];
    v.du = v.du * z + s.au[n];
    v.dtau = v.dtau * z + s.atau[n];
    v.dutau = v.dutau * z + s.autau[n];
    if (n >= 1) {
      v.dz = v.dz * z + n * s.a[n];
      v.dtauz = v.dtauz * z + n * s.atau[n];
    }
  }
  return v;
}

double GeometricFit::tail(double z) const {
  if (rate == 0.0 || prefactor == 0.0)
    return 0.0;
  const double q = rate * std::fabs(z);
  if (q >= 1.0)
    return std::numeric_limits<double>::infinity();
  return prefactor * std::pow(q, last_index + 1) / (1.0 - q);
}

GeometricFit fit_geometric(std::span<const double> terms, int window, double floor) {
  GeometricFit fit;
  if (terms.size() < 2)
    return fit;
  fit.last_index = static_cast<int>(terms.size()) - 1;
  double scale = 1.0;
  for (std::size_t n = 1; n < terms.size(); ++n)
    scale = std::max(scale, std::fabs(terms[n]));
  std::vector<int> used;
  for (int n = fit.last_index; n >= std::max(1, fit.last_index - window + 1); --n)
    if (std::fabs(terms[n]) > floor * scale)
      used.push_back(n);
  fit.terms_used = static_cast<int>(used.size());
  if (used.size() < 2)
    return fit;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int n : used) {
    const double y = std::log(std::fabs(terms[n]));
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  const double m = static_cast<double>(used.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.rate = std::exp(slope);
  // Envelope through the largest normalised term, so the fit dominates the data.
  double c = 0.0;
  for (int n : used)
    c = std::max(c, std::fabs(terms[n]) / std::pow(fit.rate, n));
  fit.prefactor = c;
  return fit;
}

ZeroResult find_smallest_zero(const DetSeries& series, const ZeroOptions& options) {
  const double b1 = series.b_table.empty() ? 0.0 : series.b_table[0].b;
  double z_cap = b1 != 0.0 ? 4.0 * (1.0 / std::fabs(b1) + 1.0) : 1e3;

  const GeometricFit fit = fit_geometric(series.a);
  if (fit.tail(z_cap) > options.tail_limit) {
    double lo = 0.0, hi = z_cap;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (fit.tail(mid) > options.tail_limit ? hi : lo) = mid;
    }
    z_cap = lo;
  }
  auto d_at = [&](double z) { return eval_det(series, z).d; };

  // Ascending geometric scan from d(0) = 1.
  const int points = std::max(options.grid_points, 2);
  const double z_min = z_cap * 1e-6;
  double prev_z = 0.0;
  double prev_d = 1.0;
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int k = 0; k < points; ++k) {
    const double z = z_min * std::pow(z_cap / z_min, static_cast<double>(k) / (points - 1));
    const double dv = d_at(z);
    if (dv == 0.0 || std::signbit(dv) != std::signbit(prev_d)) {
      lo = prev_z;
      hi = z;
      bracketed = true;
      break;
    }
    prev_z = z;
    prev_d = dv;
  }
  if (!bracketed)
    throw ConvergenceError("zero not bracketed: d keeps its sign on (0, " + std::to_string(z_cap) +
                           "]");

  // Safeguarded Newton; bisection whenever the step leaves the bracket.
  const bool lo_negative = std::signbit(d_at(lo));
  double z = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const DetValues v = eval_det(series, z);
    if (v.d == 0.0)
      break;
    if (std::signbit(v.d) == lo_negative)
      lo = z;
    else
      hi = z;
    double next = z - v.d / v.dz;
    if (!(next > lo && next < hi) || !std::isfinite(next))
      next = 0.5 * (lo + hi);
    const double step = std::fabs(next - z);
    z = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * z || hi - lo <= 0.0)
      break;
  }
  const DetValues v = eval_det(series, z);
  if (!(std::fabs(v.d) < options.residual))
    throw ConvergenceError("zero refinement stalled at |d| = " + std::to_string(std::fabs(v.d)));

  ZeroResult out;
  out.z_star = z;
  out.pressure = -std::log(z);
  out.dz = v.dz;
  out.tail = fit.tail(z);
  out.z_cap = z_cap;
  return out;
}

} // namespace dyndet
