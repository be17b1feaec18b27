#pragma once

#include <cstddef>
#include <vector>

#include "dyndet/map_model.hpp"

namespace dyndet {

/// Ulam discretisation of the transfer operator on m equal bins
/// B_i = [i/m, (i+1)/m): P[i][j] = |B_i ∩ T^{-1} B_j| / |B_i|, stored as CSR.
struct UlamModel {
  int bins = 0;
  double tau = 0.0;
  std::vector<std::size_t> row_start; // size bins + 1
  std::vector<int> columns;
  std::vector<double> values;

  double row_sum(int row) const;
  double entry(int row, int column) const;
};

/// Entries are exact up to the 1e-14 accuracy of branch inversion.
UlamModel build_ulam(const TrigMapFamily& family, double tau, int bins, unsigned workers = 1);

/// Left fixed vector of P (density, mean 1) by power iteration to a sup-norm
/// step below `tolerance`. Throws ConvergenceError after `max_iterations`.
std::vector<double> stationary_density(const UlamModel& model, double tolerance = 1e-13,
                                       int max_iterations = 100000);

/// sum_i density_i g(midpoint_i) / m.
double ulam_srb_average(const std::vector<double>& density, const Observable& g);
double ulam_srb_average(const UlamModel& model, const Observable& g);

/// [avg(tau = h) - avg(tau = -h)] / (2h) from two Ulam models.
double ulam_response_fd(const TrigMapFamily& family, const Observable& g, double h, int bins,
                        unsigned workers = 1);

/// Grid scan of L^n(x) - x over [0,1) for each integer crossing, refined by
/// bisection. Independent of the inverse-branch enumerator.
std::vector<double> brute_fixed_points(const TrigMapFamily& family, double tau, int n,
                                       int grid);

} // namespace dyndet
