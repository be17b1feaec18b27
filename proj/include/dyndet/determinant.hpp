#pragma once

#include <span>
#include <vector>

#include "dyndet/orbit_traces.hpp"

namespace dyndet {

/// a_0..a_{n_max} of exp(-sum_n b_n z^n / n) by the Newton-identity
/// recursion a_n = -(1/n) sum_{k<n} a_k b_{n-k}. b[n-1] holds b_n.
std::vector<double> det_coefficients(std::span<const double> b, int n_max);

/// Truncated determinant d(z, u, tau) = sum a_n z^n with its first u, tau
/// and mixed partials at (u, tau) = (0, 0).
struct DetSeries {
  int n_max = 0;
  std::vector<double> a;
  std::vector<double> au;
  std::vector<double> atau;
  std::vector<double> autau;
  std::vector<TraceTerms> b_table; // b_table[n-1] for n = 1..n_max
};

DetSeries det_coefficient_partials(std::span<const TraceTerms> b_table, int n_max);

/// Series for a plain trace sequence (all partials zero).
DetSeries det_series(std::span<const double> b, int n_max);

/// |n a_n + sum_{j<n} a_j b_{n-j}|.
double recursion_residual(const DetSeries& series, int n);

struct DetValues {
  double d = 0.0;
  double dz = 0.0;
  double du = 0.0;
  double dtau = 0.0;
  double dutau = 0.0;
  double dtauz = 0.0;
};

DetValues eval_det(const DetSeries& series, double z);

/// |t_n| ~ prefactor * rate^n fitted by least squares on log|t_n| over those
/// of the last `window` terms that lie above the round-off floor. rate = 0
/// when fewer than two survive (the sequence has terminated at round-off).
struct GeometricFit {
  double prefactor = 0.0;
  double rate = 0.0;
  int last_index = 0;  // highest n in the sequence
  int terms_used = 0;

  /// Estimated sum over n > last_index of |t_n| z^n; +inf when rate z >= 1.
  double tail(double z) const;
};

inline constexpr double kRoundoffFloor = 1e-14;

/// `terms[n]` for n = 0..N; index 0 is ignored.
GeometricFit fit_geometric(std::span<const double> terms, int window = 4,
                           double floor = kRoundoffFloor);

struct ZeroOptions {
  double tail_limit = 1e-8;    // refuse z where the a_n tail estimate exceeds this
  double residual = 1e-13;     // |d(z*)| target
  int grid_points = 400;
};

struct ZeroResult {
  double z_star = 0.0;
  double pressure = 0.0; // -log z_star
  double dz = 0.0;       // d'(z_star)
  double tail = 0.0;     // a_n tail estimate at z_star
  double z_cap = 0.0;    // end of the scanned range
};

/// Smallest positive zero of z -> d(z) (u, tau at the base point).
/// Throws ConvergenceError("zero not bracketed") if d keeps its sign on the
/// validated range.
ZeroResult find_smallest_zero(const DetSeries& series, const ZeroOptions& options = {});

} // namespace dyndet
