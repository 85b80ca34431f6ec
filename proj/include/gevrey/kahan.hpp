#pragma once

#include <cmath>

namespace gevrey::detail {

// Neumaier-compensated accumulator. Summation order is fixed by the caller, so
// results are bit-reproducible for a fixed iteration order.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace gevrey::detail
