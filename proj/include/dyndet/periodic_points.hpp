#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyndet/map_model.hpp"

namespace dyndet {

/// Monotone branches of T_tau.
///
/// The fundamental domain is [anchor, anchor + 1) where `anchor` is a fixed
/// point of T_tau (anchor = 0 whenever L_tau(0) is an integer). Branch w is
/// [cuts[w], cuts[w+1]] and L_tau - offsets[w] maps it increasingly onto
/// [anchor, anchor + 1]; cuts[degree] = anchor + 1.
struct BranchPartition {
  CircleMap map;
  double tau = 0.0;
  double anchor = 0.0;
  double expansion = 2.0; // certified lower bound on L'
  std::vector<double> cuts;
  std::vector<std::int64_t> offsets;

  int degree() const { return map.degree(); }

  /// The inverse of branch w applied to y in [anchor, anchor + 1].
  double inverse(int branch, double y) const;
};

BranchPartition branch_partition(const TrigMapFamily& family, double tau);

/// Unique periodic point of the cyclic itinerary (w_0, ..., w_{n-1}) of
/// the inverse-branch contraction, in lifted coordinates [anchor, anchor+1]
/// (the all-last itinerary returns anchor + 1). Refined by one extended
/// precision Newton step on L^n(x) - x - J.
double inverse_branch_point_lifted(const BranchPartition& partition,
                                   std::span<const int> itinerary, double tol = 1e-15);

/// As above, reduced into [0,1).
double inverse_branch_point(const BranchPartition& partition, std::span<const int> itinerary,
                            double tol = 1e-15);

struct PeriodicResidual {
  /// |L^n(x) - x - J|, J the nearest integer, in extended precision along
  /// the mod-1 orbit. Bounded below by ((T^n)'(x) - 1) * ulp(x) / 2 for a
  /// double x, so it grows like degree^n even for correctly rounded points.
  double forward = 0.0;
  /// forward / ((T^n)'(x) - 1): distance from x to the exact periodic point
  /// to first order.
  double point = 0.0;
};

PeriodicResidual periodic_residual(const CircleMap& map, double x, int n);

struct FixedPointRecord {
  std::vector<int> itinerary;
  double x = 0.0;
  double residual = 0.0;         // PeriodicResidual::point
  double forward_residual = 0.0; // PeriodicResidual::forward
};

struct FixedPointSet {
  int degree = 2;
  int period = 0;
  double tau = 0.0;
  std::vector<FixedPointRecord> points; // itinerary-lexicographic order
};

struct EnumerationOptions {
  unsigned workers = 1;
  std::size_t max_itineraries = std::size_t{1} << 22;
  double merge_tol = 1e-9;
  double residual_tol = 1e-12;
};

/// All degree^n - 1 points of Fix(T_tau^n).
FixedPointSet enumerate_fixed_points(const TrigMapFamily& family, double tau, int n,
                                     const EnumerationOptions& options = {});

/// The orbit x, T(x), ..., T^{n-1}(x) of points[index], read off the set by
/// rotating itineraries rather than iterating T (forward iteration amplifies
/// the rounding error of x by (T^n)').
std::vector<double> periodic_orbit(const FixedPointSet& set, std::size_t index);

/// Itinerary of length n with index `code` in lexicographic order.
std::vector<int> itinerary_from_index(std::uint64_t code, int degree, int n);

} // namespace dyndet
