// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nestexp/compensated.hpp"
#include "nestexp/constants.hpp"
#include "nestexp/special_functions.hpp"
#include "nestexp/types.hpp"

namespace nestexp {

/// Survival integral G(w) = F-bar_{W3}(w) = -e^{e^w} Ei(-e^w).
/// Strictly positive and strictly decreasing; finite over |w| <= 700.
///
/// Three regimes, each evaluated at the one rounded argument x = fl(e^w)
/// (mixing w into the series' logarithmic head looks attractive but puts an
/// O(eps) inconsistency against the tiny bracket near the crossover, costing
/// three digits there):
///   w <= -40:      G = -gamma - w exactly; the dropped tail |w| e^w is below
///                  one ulp of the result.
///   e^w <= 6:      -e^x Ei(-x) through the anchored series.
///   e^w > 6:       the scaled continued fraction e^x E1(x), overflow-free.
inline double g_function(double w) {
  if (w <= -40.0) return -(kEulerGamma + w);
  const double x = std::exp(w);
  if (x > detail::kEiCrossover) return detail::e1_scaled_cf(x);
  return -std::exp(x) * detail::ei_series_negative(-x);
}

/// Integrated CDF of W3: int_{-inf}^w F = gamma + w + G(w).
inline double integrated_cdf_w3(double w) {
  return kEulerGamma + w + g_function(w);
}

/// CDF of W3 = ln(Y3): F_{W3}(w) = -e^{e^w + w} Ei(-e^w) = e^w G(w).
/// For large w this is e^w e1_scaled_cf(e^w), the continued-fraction
/// evaluation of the integral form int_0^inf e^{w-t}/(t+e^w) dt, so no
/// intermediate exponential can overflow.
inline Probability cdf_w3(double w) {
  return Probability(std::exp(w) * g_function(w));
}

/// Exact closed-form CDFs of Y_n at y > 0 for the analytically solved cases:
/// n=1: 1 - e^-y; n=2: 1 - 1/(y+1); n=3: -y e^y Ei(-y).
/// Throws std::invalid_argument for n >= 4 (no closed form exists; use
/// charfn_inversion::cdf_wn or Monte Carlo explicitly).
inline Probability cdf_y_exact(SequenceIndex n, double y) {
  if (!(y > 0.0)) throw std::domain_error("cdf_y_exact: y must be > 0");
  switch (n.n()) {
    case 1:
      return Probability(-std::expm1(-y));
    case 2:
      return Probability(y / (y + 1.0));
    case 3: {
      if (y > detail::kEiCrossover)
        return Probability(y * detail::e1_scaled_cf(y));
      return Probability(-y * std::exp(y) * expint_ei(NegativeArgument(-y)));
    }
    default:
      throw std::invalid_argument(
          "cdf_y_exact: no closed form for n >= 4; use inversion or "
          "simulation");
  }
}

struct DerivativeVector {
  std::vector<double> values;      // values[k] = G^(k)(w), k = 0..k_max
  bool accuracy_degraded = false;  // high order and/or positive w; see below
};

/// Derivatives of G by the recurrence G^(1) = e^w G - 1 and
/// G^(k+1) = e^w sum_{j<=k} C(k,j) G^(j). At w = 0 this reproduces
/// delta B_k - A_k against the exact integer tables.
///
/// Roundoff through the recurrence amplifies like (2.3 e^w)^k (measured), so
/// high orders are only trustworthy for w <= 0: at (k, w) = (30, 2) the
/// amplification reaches ~1e36 and the value is meaningless. The
/// accuracy_degraded flag covers k_max > 30 and the measured positive-w
/// envelope k_max * w > 15.
/// TODO: run the recurrence in Float50 (with a Float50 G seed) if flagged
/// orders at positive w ever need real values.
inline DerivativeVector g_derivatives(double w, std::size_t k_max) {
  if (k_max > 64)
    throw std::invalid_argument(
        "g_derivatives: k_max > 64 (binomial rows exceed 64-bit range)");
  DerivativeVector out;
  out.accuracy_degraded =
      k_max > 30 || (w > 0.0 && static_cast<double>(k_max) * w > 15.0);
  out.values.reserve(k_max + 1);
  out.values.push_back(g_function(w));
  if (k_max == 0) return out;
  const double ew = std::exp(w);
  out.values.push_back(ew * out.values[0] - 1.0);
  std::vector<std::uint64_t> binom = {1};  // row C(k, .)
  for (std::size_t k = 1; k < k_max; ++k) {
    binom.push_back(1);
    for (std::size_t j = k - 1; j >= 1; --j) binom[j] += binom[j - 1];
    dd::KahanSum s;
    for (std::size_t j = 0; j <= k; ++j)
      s.add(static_cast<double>(binom[j]) * out.values[j]);
    out.values.push_back(ew * s.value());
  }
  return out;
}

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of W_n = ln(Y_n): the signed Gumbel sum leaves mean
/// -gamma for odd n, 0 for even n, and variance n pi^2/6 for every n.
inline Moments wn_moments(SequenceIndex n) {
  return {n.odd() ? -kEulerGamma : 0.0,
          static_cast<double>(n.n()) * kPiSquaredOver6};
}

}  // namespace nestexp
