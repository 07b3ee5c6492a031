#pragma once

namespace btensor::detail {

/// Two-sum cascade accumulator (Neumaier). Row aggregates decide class
/// membership at tol = 0, so their rounding must not leak into comparisons;
/// the cascade keeps the error at the eps^2 level. All operations are
/// sign-symmetric: accumulating the negated terms yields the exact negation.
struct Accum {
  double hi = 0.0;
  double lo = 0.0;

  void add(double v) {
    const double s = hi + v;
    const double bb = s - hi;
    lo += (hi - (s - bb)) + (v - bb);
    hi = s;
  }

  double value() const { return hi + lo; }
};

}  // namespace btensor::detail
