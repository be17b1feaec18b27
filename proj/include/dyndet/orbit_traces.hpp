#pragma once

#include <span>
#include <vector>

#include "dyndet/map_model.hpp"
#include "dyndet/periodic_points.hpp"

namespace dyndet {

/// Values at one shifted orbit point x_k.
struct ShiftTerms {
  double xn = 0.0;      // X_n(x_k)
  double g_prime = 0.0; // g'(x_k)
  double dn = 0.0;      // (T^n)'(x_k)
};

/// Everything the trace formulas need about one periodic point x of T^n.
struct OrbitJet {
  std::vector<double> orbit; // x_0 = x, ..., x_{n-1}
  double dn = 0.0;           // (T^n)'(x)
  double dn2 = 0.0;          // (T^n)''(x)
  double sg = 0.0;           // sum_k g(x_k)
  double xn = 0.0;           // X_n(x) = d/dtau L_tau^n(x)
  double xn1 = 0.0;          // X_n'(x)
  std::vector<ShiftTerms> shifts;
};

/// Builds the jet from the frozen map, the tau-velocity X = d/dtau L_tau and g.
/// Throws InputError if x is not periodic to `residual_tol`, ConsistencyError
/// if (T^n)' <= 1 or the cyclic product identity fails.
OrbitJet orbit_jet(const CircleMap& map, const TrigSeries& velocity, const Observable& g, double x,
                   int n, double residual_tol = 1e-12);

/// As above with the orbit x_0, ..., x_{n-1} supplied (see periodic_orbit).
OrbitJet orbit_jet(const CircleMap& map, const TrigSeries& velocity, const Observable& g,
                   std::span<const double> orbit, double residual_tol = 1e-12);

OrbitJet orbit_jet(const TrigMapFamily& family, const Observable& g, double tau, double x, int n);

/// (b_n, d_u b_n, d_tau b_n, d_u d_tau b_n) at the base point (u, tau) = (0, 0).
struct TraceTerms {
  double b = 0.0;
  double bu = 0.0;
  double btau = 0.0;
  double butau = 0.0;
};

/// Worker count and enumeration tolerances shared by all trace computations.
using TraceOptions = EnumerationOptions;

/// b_n(u, tau) = sum over Fix(T_tau^n) of exp(-u S_n g(x)) / ((T^n)'(x) - 1).
double trace_b(const TrigMapFamily& family, const Observable& g, double tau, double u, int n,
               const TraceOptions& options = {});

/// Flat trace with a general weight phi:
///   sum over Fix(T_tau^n) of exp(S_n phi(x)) / (1 - 1/(T^n)'(x)).
double trace_b_weighted(const TrigMapFamily& family, const Observable& g, double tau,
                        const Weight& weight, int n, const TraceOptions& options = {});

/// Partials at (0, 0) from one pass over Fix(T_0^n). Re-base the family to
/// evaluate at another parameter value.
TraceTerms trace_b_partials(const TrigMapFamily& family, const Observable& g, int n,
                            const TraceOptions& options = {});

/// trace_b_partials for n = 1..n_max; entry n-1 holds order n.
std::vector<TraceTerms> trace_table(const TrigMapFamily& family, const Observable& g, int n_max,
                                    const TraceOptions& options = {});

/// trace_b_weighted for n = 1..n_max at tau; entry n-1 holds order n.
std::vector<double> weighted_trace_table(const TrigMapFamily& family, const Observable& g,
                                         double tau, const Weight& weight, int n_max,
                                         const TraceOptions& options = {});

} // namespace dyndet
