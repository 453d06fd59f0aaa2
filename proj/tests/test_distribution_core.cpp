// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nestexp/constants.hpp"
#include "nestexp/distribution_core.hpp"
#include "nestexp/integer_sequences.hpp"
#include "oracles.hpp"

using namespace nestexp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cdf_y_exact closed forms at the documented points") {
  CHECK_THAT(oracles::trunc6(cdf_y_exact(SequenceIndex(1), 1.0).value()),
             WithinAbs(0.632120, 5e-7));
  CHECK_THAT(cdf_y_exact(SequenceIndex(1), 1.0).value(),
             WithinRel(1.0 - std::exp(-1.0), 1e-14));
  CHECK(cdf_y_exact(SequenceIndex(2), 1.0).value() == 0.5);
  CHECK_THAT(cdf_y_exact(SequenceIndex(3), 1.0).value(),
             WithinAbs(oracles::kDeltaRef, 1e-13));
  CHECK_THAT(cdf_y_exact(SequenceIndex(2), 3.0).value(),
             WithinRel(0.75, 1e-15));
  // mpmath: -0.25 e^0.25 Ei(-0.25) = 0.33522136120784833816
  CHECK_THAT(cdf_y_exact(SequenceIndex(3), 0.25).value(),
             WithinRel(0.33522136120784833816, 1e-13));
}

TEST_CASE("cdf_y_exact error contract") {
  CHECK_THROWS_AS(cdf_y_exact(SequenceIndex(4), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cdf_y_exact(SequenceIndex(7), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cdf_y_exact(SequenceIndex(1), 0.0), std::domain_error);
  CHECK_THROWS_AS(cdf_y_exact(SequenceIndex(1), -2.0), std::domain_error);
}

TEST_CASE("cdf_y_exact strictly increasing on a 1000-point grid") {
  // grid capped at y = 20 so consecutive CDF increments stay above one ulp
  for (std::uint64_t n : {1ull, 2ull, 3ull}) {
    double prev = -1.0;
    for (int i = 0; i < 1000; ++i) {
      const double y = 1e-2 * std::pow(2000.0, i / 999.0);
      const double v = cdf_y_exact(SequenceIndex(n), y).value();
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("cdf_w3 values") {
  CHECK_THAT(cdf_w3(0.0).value(), WithinAbs(oracles::kDeltaRef, 1e-13));
  // mpmath: F_{W3}(ln 2) = 0.72265723377644516939
  CHECK_THAT(cdf_w3(std::log(2.0)).value(),
             WithinRel(0.72265723377644516939, 1e-13));
  CHECK_THAT(cdf_w3(std::log(2.0)).value(), WithinAbs(0.7227, 5e-5));
  // mpmath spot values
  CHECK_THAT(cdf_w3(-1.0).value(), WithinRel(0.40360185733804622197, 1e-13));
  CHECK_THAT(cdf_w3(2.0).value(), WithinRel(0.89137220491216230438, 1e-13));
}

TEST_CASE("cdf_w3 against the integral-form quadrature oracle") {
  for (double w : {-2.0, -0.5, 0.0, 0.7, 2.0}) {
    CHECK_THAT(cdf_w3(w).value(),
               WithinAbs(oracles::cdf_w3_integral_oracle(w), 1e-9));
  }
}

TEST_CASE("cdf_w3 limits and extreme arguments stay finite") {
  CHECK_THAT(cdf_w3(-30.0).value(), WithinAbs(0.0, 1e-11));
  CHECK(cdf_w3(-700.0).value() >= 0.0);
  CHECK(cdf_w3(-700.0).value() < 1e-300);
  CHECK(cdf_w3(700.0).value() <= 1.0);
  CHECK(cdf_w3(700.0).value() >= 1.0 - 1e-15);
  CHECK(std::isfinite(cdf_w3(700.0).value()));
}

TEST_CASE("cdf_w3 consistent with cdf_y_exact(3, e^w)") {
  for (double w : oracles::uniform_points(50, -20.0, 20.0, 31415)) {
    const double via_w = cdf_w3(w).value();
    const double via_y = cdf_y_exact(SequenceIndex(3), std::exp(w)).value();
    CHECK_THAT(via_w, WithinAbs(via_y, 1e-12));
  }
}

TEST_CASE("g_function values") {
  CHECK_THAT(g_function(0.0), WithinAbs(oracles::kDeltaRef, 1e-13));
  // tail expansion: G(w) ~ -gamma - w; at w = -30 the correction is
  // ~2.8e-12 (mpmath: G(-30) = 29.422784335101313989)
  CHECK_THAT(g_function(-30.0), WithinRel(29.422784335101313989, 1e-13));
  CHECK_THAT(g_function(-30.0), WithinAbs(30.0 - oracles::kGammaRef, 1e-10));
  // mpmath spot values
  CHECK_THAT(g_function(-1.0), WithinRel(1.0971035947343310078, 1e-13));
  CHECK_THAT(g_function(0.5), WithinRel(0.41808859304866468210, 1e-13));
  CHECK_THAT(g_function(2.0), WithinRel(0.12063410982103145249, 1e-13));
  // G(5): asymptotic Ei(-x) ~ -e^-x/x gives G(w) ~ e^-w
  const double g5 = g_function(5.0);
  CHECK(g5 > 0.0);
  CHECK(g5 < 0.01);
  CHECK_THAT(g5, WithinRel(0.0066931468295574017325, 1e-13));
}

TEST_CASE("g_function strictly positive and decreasing") {
  double prev = g_function(-12.0);
  for (double w = -11.8; w <= 12.0; w += 0.2) {
    const double v = g_function(w);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("g_derivatives reproduces the delta-pattern at w = 0") {
  const auto d = g_derivatives(0.0, 3);
  REQUIRE(d.values.size() == 4);
  CHECK_THAT(d.values[0], WithinAbs(oracles::kDeltaRef, 1e-13));
  CHECK_THAT(d.values[1], WithinAbs(oracles::kDeltaRef - 1.0, 1e-13));
  CHECK_THAT(d.values[1], WithinAbs(-0.403653, 5e-7));
  CHECK_THAT(d.values[2], WithinAbs(2.0 * oracles::kDeltaRef - 1.0, 1e-13));
  CHECK_THAT(d.values[2], WithinAbs(0.192695, 5e-7));
  CHECK_THAT(d.values[3], WithinAbs(5.0 * oracles::kDeltaRef - 3.0, 1e-13));
  CHECK_THAT(d.values[3], WithinAbs(-0.018263, 5e-7));
}

TEST_CASE("g_derivatives matches delta B_k - A_k for k <= 25") {
  const CoefficientTable table(26);
  const auto d = g_derivatives(0.0, 25);
  for (std::size_t k = 0; k <= 25; ++k) {
    const double expected =
        (Float50(oracles::kDeltaRef) * Float50(table.bell(k)) -
         Float50(table.gould(k)))
            .convert_to<double>();
    // absolute tolerance scales with the B_k-sized intermediates
    const double scale = table.bell(k).convert_to<double>();
    CHECK_THAT(d.values[k], WithinAbs(expected, 1e-12 * scale + 1e-13));
  }
}

TEST_CASE("g_derivatives high-order values away from the origin") {
  // two independent 120-digit routes (step finite differences and the
  // coefficient series) agree on these to 22 digits; double-precision
  // recurrence roundoff amplifies like (2.3 e^w)^k, so tolerances widen
  // with k and positive w
  CHECK_THAT(g_derivatives(0.5, 10).values[10],
             WithinRel(0.35086640457976443764, 1e-8));
  CHECK_FALSE(g_derivatives(0.5, 10).accuracy_degraded);
  CHECK_THAT(g_derivatives(-3.0, 20).values[20],
             WithinRel(-113.29901322512920437, 1e-10));
  CHECK_FALSE(g_derivatives(-3.0, 20).accuracy_degraded);
  // (k, w) = (30, 2) amplifies roundoff by ~1e36: flagged, value unusable
  CHECK(g_derivatives(2.0, 30).accuracy_degraded);
  CHECK(g_derivatives(1.0, 20).accuracy_degraded);
}

TEST_CASE("g_derivatives first derivative cross-checked by finite differences") {
  for (double w : oracles::uniform_points(20, -5.0, 5.0, 555)) {
    const double fd = oracles::central_diff(g_function, w, 1e-5);
    const double an = g_derivatives(w, 1).values[1];
    CHECK_THAT(an, WithinRel(fd, 1e-6));
  }
}

TEST_CASE("g_derivatives flags and limits") {
  CHECK_FALSE(g_derivatives(0.5, 30).accuracy_degraded);
  CHECK(g_derivatives(0.5, 31).accuracy_degraded);
  CHECK_THROWS_AS(g_derivatives(0.0, 65), std::invalid_argument);
  CHECK(g_derivatives(1.3, 0).values.size() == 1);
  CHECK(g_derivatives(1.3, 0).values[0] == g_function(1.3));
}

TEST_CASE("integrated_cdf_w3 ties the two survival integrals together") {
  // int_0^50 (1 - F) ds = G(0) = delta; int_-50^0 F ds = delta + gamma
  const double upper = oracles::adaptive_simpson(
      [](double s) { return 1.0 - cdf_w3(s).value(); }, 0.0, 50.0, 1e-11);
  const double lower = oracles::adaptive_simpson(
      [](double s) { return cdf_w3(s).value(); }, -50.0, 0.0, 1e-11);
  CHECK_THAT(upper, WithinAbs(oracles::kDeltaRef, 1e-8));
  CHECK_THAT(lower, WithinAbs(oracles::kDeltaRef + oracles::kGammaRef, 1e-8));
  CHECK_THAT(integrated_cdf_w3(0.0),
             WithinAbs(oracles::kDeltaRef + oracles::kGammaRef, 1e-13));
}

TEST_CASE("wn_moments") {
  const Moments m1 = wn_moments(SequenceIndex(1));
  CHECK_THAT(m1.mean, WithinAbs(-oracles::kGammaRef, 1e-15));
  CHECK_THAT(m1.variance, WithinRel(kPi * kPi / 6.0, 1e-14));
  const Moments m2 = wn_moments(SequenceIndex(2));
  CHECK(m2.mean == 0.0);
  CHECK_THAT(m2.variance, WithinRel(kPi * kPi / 3.0, 1e-14));
  const Moments m3 = wn_moments(SequenceIndex(3));
  CHECK_THAT(m3.mean, WithinAbs(-oracles::kGammaRef, 1e-15));
  CHECK_THAT(m3.variance, WithinRel(kPi * kPi / 2.0, 1e-14));
}
