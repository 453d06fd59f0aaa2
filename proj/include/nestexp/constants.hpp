// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace nestexp {

// Mathematical constants used throughout the library. All values are the
// correctly rounded doubles of the underlying constants (>= 15 significant
// digits). kEulerGompertz and kEulerGamma are cross-derived at verification
// time from three independent routes (Hardy series, -e*Ei(-1), Euler-Maclaurin
// on the harmonic sum); see verification.hpp.

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kE = 2.71828182845904523536;
inline constexpr double kSqrtTwoPi = 2.50662827463100050242;

// Euler-Mascheroni constant, gamma = lim (H_n - ln n).
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Euler-Gompertz constant, delta = -e Ei(-1) = int_0^inf ln(t+1) e^-t dt.
inline constexpr double kEulerGompertz = 0.59634736232319407434;

// Gumbel variance pi^2/6, the per-term variance of -ln(X), X ~ Exp(1).
inline constexpr double kPiSquaredOver6 = 1.64493406684822643647;

}  // namespace nestexp
