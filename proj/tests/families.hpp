#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dyndet/map_model.hpp"

namespace dyndet::testing {

/// L_tau(x) = 2x + tau sin(2 pi x) / (2 pi), tau in [-0.1, 0.1].
inline TrigMapFamily perturbed_doubling() {
  return TrigMapFamily(2, TauPolynomial::constant(0.0),
                       {{1, TauPolynomial::linear(0.0, 1.0 / kTwoPi), TauPolynomial::constant(0.0)}},
                       {-0.1, 0.1});
}

/// L_tau(x) = 2x + c0 tau.
inline TrigMapFamily shifted_doubling(double c0) {
  return TrigMapFamily(2, TauPolynomial::linear(0.0, c0), {}, {-0.1, 0.1});
}

inline TrigMapFamily doubling() { return TrigMapFamily::multiply(2); }

inline Observable cosine() { return Observable(0.0, {{1, 0.0, 1.0}}); }

inline Observable constant_observable(double c) { return Observable(c, {}); }

/// |got - want| / |want|; infinite when want = 0 and got differs.
inline double rel_err(double got, double want) {
  if (got == want)
    return 0.0;
  return want == 0.0 ? INFINITY : std::fabs(got - want) / std::fabs(want);
}

} // namespace dyndet::testing
