// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

// Error-free transformations (Knuth two-sum, FMA two-prod) and the small
// double-double kernel built on them. Used where a plain double accumulation
// would lose digits to cancellation: the Ei power series and the alternating
// Taylor sums.

namespace nestexp::dd {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  const DoubleDouble r = two_sum(s.hi, s.lo);
  return r;
}

inline DoubleDouble add(DoubleDouble x, double d) { return add(x, {d, 0.0}); }

inline DoubleDouble mul(DoubleDouble x, double d) {
  DoubleDouble p = two_prod(x.hi, d);
  p.lo += x.lo * d;
  return two_sum(p.hi, p.lo);
}

inline DoubleDouble div(DoubleDouble x, double d) {
  const double q1 = x.hi / d;
  const DoubleDouble p = two_prod(q1, d);
  const double q2 = (((x.hi - p.hi) - p.lo) + x.lo) / d;
  return two_sum(q1, q2);
}

inline double to_double(DoubleDouble x) { return x.hi + x.lo; }

/// Kahan compensated accumulator for plain-double term streams.
class KahanSum {
 public:
  void add(double term) {
    const double y = term - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }

  double value() const noexcept { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace nestexp::dd
