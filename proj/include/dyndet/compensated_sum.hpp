#pragma once

#include <cmath>

namespace dyndet {

/// Kahan–Babuška (Neumaier) accumulator. The result depends only on the
/// order of add() calls, so fixed-order reductions are bit-reproducible.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      compensation_ += (sum_ - t) + v;
    else
      compensation_ += (v - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

} // namespace dyndet
