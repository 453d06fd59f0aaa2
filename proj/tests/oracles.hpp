// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-only oracles, deliberately independent of the library implementation
// paths they are used to check.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// Euler-Mascheroni and Euler-Gompertz to 21 digits (reference literals).
inline constexpr double kGammaRef = 0.57721566490153286061;
inline constexpr double kDeltaRef = 0.59634736232319407434;

// The published kappa table prints six truncated digits; compare on the floor.
inline double trunc6(double x) { return std::floor(x * 1e6) / 1e6; }

// Plain 30-term power series Ei(x) = gamma + ln|x| + sum x^k/(k k!),
// adequate near x = -1 where no cancellation amplification occurs.
inline double ei_series_30(double x) {
  double sum = kGammaRef + std::log(std::abs(x));
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 30; ++k) {
    term *= x / k;
    sum += term / k;
  }
  return sum;
}

// Adaptive Simpson quadrature (recursive, with the classic 1/15 error rule).
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol, int depth = 40) {
  const auto simpson = [&f](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
  };
  std::function<double(double, double, double, double, int)> rec =
      [&](double lo, double hi, double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double left = simpson(lo, mid);
    const double right = simpson(mid, hi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, left, 0.5 * eps, d - 1) +
           rec(mid, hi, right, 0.5 * eps, d - 1);
  };
  return rec(a, b, simpson(a, b), tol, depth);
}

// Quadrature oracle for F_{W3}: the integral form int_0^inf e^{w-t}/(t+e^w) dt
// truncated at t = 60 (tail < 9e-27).
inline double cdf_w3_integral_oracle(double w) {
  const double ew = std::exp(w);
  return adaptive_simpson(
      [w, ew](double t) { return std::exp(w - t) / (t + ew); }, 0.0, 60.0,
      1e-12);
}

// Central finite difference of first order.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Deterministic uniform draws for property-style tests.
inline std::vector<double> uniform_points(std::size_t count, double lo,
                                          double hi, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (auto& v : out) v = dist(gen);
  return out;
}

}  // namespace oracles
