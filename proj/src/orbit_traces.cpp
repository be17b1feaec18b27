#include "dyndet/orbit_traces.hpp"

#include <cmath>
#include <string>

#include "dyndet/compensated_sum.hpp"
#include "dyndet/errors.hpp"
#include "dyndet/parallel.hpp"

namespace dyndet {

namespace {

struct BirkhoffData {
  double sg = 0.0;
  double dn = 1.0;
};

BirkhoffData birkhoff(const CircleMap& map, const Observable& g, std::span<const double> orbit) {
  BirkhoffData out;
  for (double y : orbit) {
    out.sg += g(y);
    out.dn *= map.jet(y).d1;
  }
  if (!(out.dn > 1.0))
    throw ConsistencyError("(T^n)' = " + std::to_string(out.dn) + " is not > 1");
  return out;
}

} // namespace

OrbitJet orbit_jet(const CircleMap& map, const TrigSeries& velocity, const Observable& g, double x,
                   int n, double residual_tol) {
  if (n < 1)
    throw InputError("period n must be >= 1");
  std::vector<double> orbit(static_cast<std::size_t>(n));
  double y = x;
  for (auto& o : orbit) {
    o = y;
    y = map(y);
  }
  return orbit_jet(map, velocity, g, orbit, residual_tol);
}

OrbitJet orbit_jet(const CircleMap& map, const TrigSeries& velocity, const Observable& g,
                   std::span<const double> orbit, double residual_tol) {
  const int n = static_cast<int>(orbit.size());
  if (n < 1)
    throw InputError("period n must be >= 1");
  const double x = orbit[0];
  const PeriodicResidual res = periodic_residual(map, x, n);
  if (!(res.point <= residual_tol))
    throw InputError("x = " + std::to_string(x) + " is not a period-" + std::to_string(n) +
                     " point (residual " + std::to_string(res.point) + ")");

  const auto len = orbit.size();
  OrbitJet jet;
  jet.orbit.assign(orbit.begin(), orbit.end());
  std::vector<double> t1(len), t2(len), vx(len), vx1(len), gp(len);

  for (std::size_t k = 0; k < len; ++k) {
    const double y = orbit[k];
    const Jet<double> m = map.jet(y);
    const Jet<double> v = velocity.jet(y);
    const Jet<double> o = g.jet(y);
    t1[k] = m.d1;
    t2[k] = m.d2;
    vx[k] = v.value;
    vx1[k] = v.d1;
    gp[k] = o.d1;
    jet.sg += o.value;
  }

  // Forward recursion along the orbit, P = (T^m)'(x):
  //   X_{m+1} = X(x_m) + T'(x_m) X_m
  //   X'_{m+1} = X'(x_m) P + T''(x_m) P X_m + T'(x_m) X'_m
  //   (T^{m+1})'' = T''(x_m) P^2 + T'(x_m) (T^m)''
  double p = 1.0, d2 = 0.0, xm = 0.0, xm1 = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    xm1 = vx1[k] * p + t2[k] * p * xm + t1[k] * xm1;
    xm = vx[k] + t1[k] * xm;
    d2 = t2[k] * p * p + t1[k] * d2;
    p *= t1[k];
  }
  jet.dn = p;
  jet.dn2 = d2;
  jet.xn = xm;
  jet.xn1 = xm1;
  if (!(jet.dn > 1.0))
    throw ConsistencyError("(T^n)' = " + std::to_string(jet.dn) + " is not > 1");

  jet.shifts.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    double acc = 0.0, prod = 1.0;
    for (std::size_t m = 0; m < len; ++m) {
      const std::size_t idx = (k + m) % len;
      acc = vx[idx] + t1[idx] * acc;
      prod *= t1[idx];
    }
    if (std::fabs(prod - jet.dn) > 1e-10 * jet.dn)
      throw ConsistencyError("cyclic product identity (T^n)'(x_k) = (T^n)'(x) violated");
    jet.shifts[k] = {acc, gp[k], prod};
  }
  return jet;
}

OrbitJet orbit_jet(const TrigMapFamily& family, const Observable& g, double tau, double x, int n) {
  return orbit_jet(family.at(tau), family.tau_derivative(tau), g, x, n);
}

double trace_b(const TrigMapFamily& family, const Observable& g, double tau, double u, int n,
               const TraceOptions& options) {
  const FixedPointSet fix = enumerate_fixed_points(family, tau, n, options);
  const CircleMap map = family.at(tau);
  std::vector<double> terms(fix.points.size());
  parallel_for(terms.size(), options.workers, [&](std::size_t i) {
    const BirkhoffData b = birkhoff(map, g, periodic_orbit(fix, i));
    terms[i] = std::exp(-u * b.sg) / (b.dn - 1.0);
  });
  CompensatedSum sum;
  for (double t : terms)
    sum += t;
  return sum.value();
}

double trace_b_weighted(const TrigMapFamily& family, const Observable& g, double tau,
                        const Weight& weight, int n, const TraceOptions& options) {
  if (weight.is_srb())
    return trace_b(family, g, tau, -weight.observable_scale, n, options);
  const FixedPointSet fix = enumerate_fixed_points(family, tau, n, options);
  const CircleMap map = family.at(tau);
  std::vector<double> terms(fix.points.size());
  parallel_for(terms.size(), options.workers, [&](std::size_t i) {
    const BirkhoffData b = birkhoff(map, g, periodic_orbit(fix, i));
    const double s_phi = weight.observable_scale * b.sg + weight.log_derivative_scale * std::log(b.dn);
    terms[i] = std::exp(s_phi) / (1.0 - 1.0 / b.dn);
  });
  CompensatedSum sum;
  for (double t : terms)
    sum += t;
  return sum.value();
}

TraceTerms trace_b_partials(const TrigMapFamily& family, const Observable& g, int n,
                            const TraceOptions& options) {
  const FixedPointSet fix = enumerate_fixed_points(family, 0.0, n, options);
  const CircleMap map = family.at(0.0);
  const TrigSeries velocity = family.tau_derivative(0.0);

  std::vector<TraceTerms> terms(fix.points.size());
  parallel_for(terms.size(), options.workers, [&](std::size_t i) {
    const OrbitJet j = orbit_jet(map, velocity, g, periodic_orbit(fix, i), options.residual_tol);
    const double gap = j.dn - 1.0;
    // d/dtau of (T^n)' along the continued periodic point.
    const double ddn = j.xn1 + j.dn2 * j.xn / (1.0 - j.dn);
    CompensatedSum shift_sum;
    for (const auto& s : j.shifts)
      shift_sum += s.xn * s.g_prime / (s.dn - 1.0);
    TraceTerms& t = terms[i];
    t.b = 1.0 / gap;
    t.bu = -j.sg / gap;
    t.btau = -ddn / (gap * gap);
    t.butau = j.sg / (gap * gap) * ddn + shift_sum.value() / gap;
  });

  CompensatedSum b, bu, btau, butau;
  for (const auto& t : terms) {
    b += t.b;
    bu += t.bu;
    btau += t.btau;
    butau += t.butau;
  }
  return {b.value(), bu.value(), btau.value(), butau.value()};
}

std::vector<TraceTerms> trace_table(const TrigMapFamily& family, const Observable& g, int n_max,
                                    const TraceOptions& options) {
  if (n_max < 1)
    throw InputError("n_max must be >= 1");
  std::vector<TraceTerms> table;
  table.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n)
    table.push_back(trace_b_partials(family, g, n, options));
  return table;
}

std::vector<double> weighted_trace_table(const TrigMapFamily& family, const Observable& g,
                                         double tau, const Weight& weight, int n_max,
                                         const TraceOptions& options) {
  if (n_max < 1)
    throw InputError("n_max must be >= 1");
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n)
    table.push_back(trace_b_weighted(family, g, tau, weight, n, options));
  return table;
}

} // namespace dyndet
