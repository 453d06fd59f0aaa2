// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nestexp {

/// Position n >= 1 in the nested sequence. Parity selects the analytic branch
/// of every formula downstream, so it is exposed directly.
class SequenceIndex {
 public:
  explicit SequenceIndex(std::uint64_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SequenceIndex: n must be >= 1");
  }

  std::uint64_t n() const noexcept { return n_; }
  bool odd() const noexcept { return (n_ % 2) == 1; }
  bool even() const noexcept { return (n_ % 2) == 0; }

 private:
  std::uint64_t n_;
};

/// A probability in [0, 1]. Construction validates; out-of-range values are a
/// caller bug or a numerical failure and must not be silently clamped.
class Probability {
 public:
  explicit Probability(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("Probability: value " + std::to_string(p) +
                              " outside [0, 1]");
  }

  double value() const noexcept { return p_; }
  operator double() const noexcept { return p_; }

 private:
  double p_;
};

/// Raised when a quadrature cannot meet the requested tolerance. Carries the
/// best estimate so callers can still inspect it.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_estimate,
                 double error_bound)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// Raised when an inversion produces a raw value far outside [0, 1],
/// signalling that the quadrature itself went wrong.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double raw_value)
      : std::runtime_error(what), raw_value_(raw_value) {}

  double raw_value() const noexcept { return raw_value_; }

 private:
  double raw_value_;
};

}  // namespace nestexp
