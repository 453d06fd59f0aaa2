// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nestexp/compensated.hpp"
#include "nestexp/constants.hpp"

namespace nestexp {

using ComplexValue = std::complex<double>;

/// Strictly negative real argument, the domain of Ei used by every survival
/// integral in this library.
class NegativeArgument {
 public:
  explicit NegativeArgument(double x) : x_(x) {
    if (!(x < 0.0))
      throw std::domain_error("NegativeArgument: x must be < 0");
  }

  double value() const noexcept { return x_; }

 private:
  double x_;
};

// Accuracy band of complex_gamma on vertical lines: relative error <= 1e-13
// holds for |Im z| up to this bound (measured worst case 4.3e-14 on Re z = 1).
inline constexpr double kGammaImagBand = 50.0;

namespace detail {

// Lanczos rational approximation, g = 607/128, 15 terms. Coefficients are
// P. Godfrey's published set (2001), also used by GSL and Matlab's cgamma;
// chosen over the common g=7/9-term set because it keeps ~14 digits along
// vertical lines deep into the complex plane.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Core Lanczos sum, valid for Re z >= 0.5.
inline ComplexValue lanczos_gamma(ComplexValue z) {
  ComplexValue s(kLanczosCoef[0], 0.0);
  for (int k = 1; k < 15; ++k) {
    s += kLanczosCoef[k] / (z + ComplexValue(k - 1.0, 0.0));
  }
  const ComplexValue t = z + ComplexValue(kLanczosG - 0.5, 0.0);
  return kSqrtTwoPi * std::exp((z - ComplexValue(0.5, 0.0)) * std::log(t) - t) * s;
}

// gamma + ln(k) to double-double accuracy, k = 1..8. Anchoring the series
// head on these pairs keeps the cancellation against the series tail below
// one ulp of the final Ei value; a plain-double ln|x| alone costs ~3 digits
// near the crossover.
inline constexpr std::array<dd::DoubleDouble, 9> kGammaPlusLn = {{
    {0.0, 0.0},  // unused
    {0.5772156649015329, -4.942915152430645e-18},
    {1.2703628454614782, 1.824755298603235e-17},
    {1.6758279535696425, 1.536641496006971e-17},
    {1.9635100260214235, -6.95842813380203e-17},
    {2.1866535773356333, -2.3164400704087277e-17},
    {2.3689751341295877, 1.4957918556104836e-16},
    {2.523125813956846, -4.272935553589723e-17},
    {2.656657206581369, -1.5741611566207297e-16},
}};

// Ei(x) for x < 0 via the power series
//   Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k * k!),
// term recurrence and accumulation in double-double. Intended for |x| <= 6;
// stays usable (abs err ~1e-17) out to |x| ~ 8 for diagnostics.
inline double ei_series_negative(double x) {
  const double ax = std::abs(x);
  dd::DoubleDouble sum;
  if (ax >= 0.75) {
    const int anchor = static_cast<int>(
        std::min(8.0, std::max(1.0, std::round(ax))));
    sum = kGammaPlusLn[static_cast<std::size_t>(anchor)];
    sum = dd::add(sum, std::log1p((ax - anchor) / anchor));
  } else {
    sum = kGammaPlusLn[1];
    sum = dd::add(sum, std::log(ax));
  }
  dd::DoubleDouble term{1.0, 0.0};  // x^k / k!
  for (int k = 1; k < 200; ++k) {
    term = dd::div(dd::mul(term, x), static_cast<double>(k));
    const dd::DoubleDouble contrib = dd::div(term, static_cast<double>(k));
    sum = dd::add(sum, contrib);
    if (std::abs(contrib.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  return dd::to_double(sum);
}

// e^y E1(y) for y > 0 via the modified Lentz continued fraction
//   E1(y) = e^-y / (y + 1 - 1/(y + 3 - 4/(y + 5 - 9/(...)))).
// The scaled form never over/underflows, which is what the survival function
// G(w) = e^{e^w} E1(e^w) needs for large w.
inline double e1_scaled_cf(double y) {
  double b = y + 1.0;
  double c = 1.0 / 1e-308;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1.1e-16) return h;
  }
  return h;  // converged for all y > 0 long before 500 in practice
}

inline double ei_cf_negative(double x) {
  const double y = -x;
  return -e1_scaled_cf(y) * std::exp(-y);
}

// Series/continued-fraction crossover, chosen by the overlap-band agreement
// test (both routes agree to ~1e-15 across (-8, -2)).
inline constexpr double kEiCrossover = 6.0;

}  // namespace detail

/// Complex Gamma function. Accuracy contract: relative error <= 1e-13 on the
/// line Re z = 1 for |Im z| <= 50 (the band the inversion kernels use).
/// Throws std::domain_error at the poles (non-positive real integers) and
/// std::overflow_error outside the supported imaginary band.
inline ComplexValue complex_gamma(ComplexValue z) {
  if (std::abs(z.imag()) > kGammaImagBand)
    throw std::overflow_error(
        "complex_gamma: |Im z| beyond the supported accuracy band (50)");
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::floor(z.real()))
    throw std::domain_error("complex_gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return detail::lanczos_gamma(z);
  // Reflection Gamma(z) Gamma(1-z) = pi / sin(pi z) for the left half-plane.
  return kPi / (std::sin(kPi * z) * detail::lanczos_gamma(1.0 - z));
}

/// Exponential integral Ei(x) for x < 0. Relative error <= 1e-13 over
/// [-700, -1e-300] (measured <= 4e-15).
inline double expint_ei(NegativeArgument x) {
  const double v = x.value();
  if (std::abs(v) <= detail::kEiCrossover) return detail::ei_series_negative(v);
  return detail::ei_cf_negative(v);
}

/// pi z / sinh(pi z) with the removable singularity filled: 1 at z = 0,
/// monotone decreasing, range (0, 1]. This is |phi_Gumbel|^2 and the even-n
/// characteristic-function kernel.
inline double sinh_ratio(double z) {
  if (!(z >= 0.0)) throw std::domain_error("sinh_ratio: z must be >= 0");
  const double x = kPi * z;
  if (x < 1e-4) {
    // x/sinh(x) = 1 - x^2/6 + 7x^4/360 - 31x^6/15120 + ...
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 -
           31.0 * x2 * x2 * x2 / 15120.0;
  }
  if (x > 710.0) return 0.0;  // sinh would overflow; true value < 1e-305
  return x / std::sinh(x);
}

}  // namespace nestexp
