// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "nestexp/constants.hpp"
#include "nestexp/distribution_core.hpp"
#include "nestexp/monte_carlo.hpp"
#include "oracles.hpp"

using namespace nestexp;
using Catch::Matchers::WithinAbs;

namespace {
double logistic(double w) { return 1.0 / (1.0 + std::exp(-w)); }
}  // namespace

TEST_CASE("sample_wn determinism is bit-exact") {
  for (SampleMethod method : {SampleMethod::nested, SampleMethod::log_sum}) {
    const SampleBatch a = sample_wn(SequenceIndex(3), 5000, 12345, method);
    const SampleBatch b = sample_wn(SequenceIndex(3), 5000, 12345, method);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(),
                      a.values.size() * sizeof(double)) == 0);
    // a different seed must give a different stream
    const SampleBatch c = sample_wn(SequenceIndex(3), 5000, 54321, method);
    CHECK(std::memcmp(a.values.data(), c.values.data(),
                      a.values.size() * sizeof(double)) != 0);
  }
}

TEST_CASE("uniform01 stays strictly inside (0, 1)") {
  double lo = 1.0, hi = 0.0, mean = 0.0;
  const int count = 100000;
  for (int c = 0; c < count; ++c) {
    const double u = detail::uniform01(987, static_cast<std::uint64_t>(c));
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    mean += u;
  }
  mean /= count;
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK_THAT(mean, WithinAbs(0.5, 4.0 / std::sqrt(12.0 * count)));
}

TEST_CASE("sample_wn n=1: P(W <= 0) matches 1 - 1/e") {
  const SampleBatch batch =
      sample_wn(SequenceIndex(1), 200000, 11, SampleMethod::log_sum);
  const CdfEstimate est = empirical_cdf_at(batch, 0.0);
  CHECK_THAT(est.estimate,
             WithinAbs(0.632120, 4.0 * std::sqrt(0.632 * 0.368 / 200000.0)));
}

TEST_CASE("sample_wn moment sanity at n = 2 and n = 3") {
  const SampleBatch b2 =
      sample_wn(SequenceIndex(2), 1000000, 22, SampleMethod::log_sum);
  const MomentSummary s2 = moment_summary(b2);
  CHECK_THAT(s2.mean, WithinAbs(0.0, 4.0 * std::sqrt(kPi * kPi / 3.0 / 1e6)));

  const SampleBatch b3 =
      sample_wn(SequenceIndex(3), 1000000, 33, SampleMethod::nested);
  const MomentSummary s3 = moment_summary(b3);
  CHECK_THAT(s3.mean, WithinAbs(-oracles::kGammaRef,
                                4.0 * std::sqrt(kPi * kPi / 2.0 / 1e6)));
}

TEST_CASE("moment convergence: mean and variance within 5 SE for n = 1..8") {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    const SampleBatch batch =
        sample_wn(SequenceIndex(n), 1000000, 4000 + n, SampleMethod::log_sum);
    const MomentSummary s = moment_summary(batch);
    const Moments expected = wn_moments(SequenceIndex(n));
    INFO("n=" << n);
    CHECK_THAT(s.mean, WithinAbs(expected.mean, 5.0 * s.se_mean));
    CHECK_THAT(s.variance, WithinAbs(expected.variance, 5.0 * s.se_variance));
  }
}

TEST_CASE("odd-n top-heaviness decreases in n") {
  double prev = 1.0;
  for (std::uint64_t n : {1ull, 3ull, 5ull, 7ull}) {
    const SampleBatch batch =
        sample_wn(SequenceIndex(n), 1000000, 600 + n, SampleMethod::log_sum);
    const CdfEstimate est = empirical_cdf_at(batch, 0.0);
    INFO("n=" << n);
    CHECK(est.estimate - 0.5 > 4.0 * est.std_err);
    CHECK(est.estimate < prev);
    prev = est.estimate;
  }
}

TEST_CASE("empirical_cdf_at edge cases") {
  const SampleBatch empty{SequenceIndex(2), SampleMethod::log_sum, 0, {}};
  CHECK_THROWS_AS(empirical_cdf_at(empty, 0.0), std::invalid_argument);

  const SampleBatch one =
      sample_wn(SequenceIndex(4), 1, 77, SampleMethod::log_sum);
  const CdfEstimate est = empirical_cdf_at(one, 0.0);
  CHECK((est.estimate == 0.0 || est.estimate == 1.0));
  CHECK(est.std_err == 0.0);

  const SampleBatch b4 =
      sample_wn(SequenceIndex(4), 1000000, 88, SampleMethod::log_sum);
  const CdfEstimate half = empirical_cdf_at(b4, 0.0);
  CHECK_THAT(half.estimate, WithinAbs(0.5, 4.0 * half.std_err));

  const SampleBatch b3 =
      sample_wn(SequenceIndex(3), 1000000, 99, SampleMethod::log_sum);
  const CdfEstimate delta_est = empirical_cdf_at(b3, 0.0);
  CHECK_THAT(delta_est.estimate,
             WithinAbs(oracles::kDeltaRef, 4.0 * delta_est.std_err));
}

TEST_CASE("ks_test against closed forms") {
  const SampleBatch b2 =
      sample_wn(SequenceIndex(2), 100000, 7, SampleMethod::log_sum);
  const DistTestReport r2 = ks_test(b2, logistic);
  CHECK(r2.pass);
  CHECK(r2.threshold == 1.63 / std::sqrt(100000.0));

  const SampleBatch b3 =
      sample_wn(SequenceIndex(3), 100000, 8, SampleMethod::log_sum);
  const DistTestReport r3 =
      ks_test(b3, [](double w) { return cdf_w3(w).value(); });
  CHECK(r3.pass);

  // power sanity: a shifted reference must fail decisively
  const DistTestReport shifted =
      ks_test(b2, [](double w) { return logistic(w - 1.0); });
  CHECK_FALSE(shifted.pass);
  CHECK(shifted.statistic > 5.0 * shifted.threshold);
}

TEST_CASE("clt_check detects the standardized normal limit") {
  CHECK(clt_check(SequenceIndex(200), 50000, 9).pass);
  CHECK(clt_check(SequenceIndex(201), 50000, 9).pass);

  // wrong center: even-n draws against the odd-n reference; the mean offset
  // gamma/(pi sqrt(n/6)) ~ 0.032 is detectable at 5e4 samples
  SampleBatch batch =
      sample_wn(SequenceIndex(200), 50000, 10, SampleMethod::log_sum);
  const double scale = kPi * std::sqrt(200.0 / 6.0);
  for (double& v : batch.values) v /= scale;
  const DistTestReport wrong = ks_test(batch, [scale](double s) {
    return normal_cdf(s + oracles::kGammaRef / scale);
  });
  CHECK_FALSE(wrong.pass);

  CHECK_THROWS_AS(clt_check(SequenceIndex(99), 50000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(clt_check(SequenceIndex(200), 5000, 1),
                  std::invalid_argument);
}

TEST_CASE("equivalence_check: nested and log_sum draws agree in law") {
  CHECK(equivalence_check(SequenceIndex(3), 100000, 1010, 2020).pass);
  CHECK(equivalence_check(SequenceIndex(6), 100000, 3030, 4040).pass);

  // different n must fail: kappa_3 != kappa_5
  const SampleBatch a =
      sample_wn(SequenceIndex(3), 100000, 1, SampleMethod::nested);
  const SampleBatch b =
      sample_wn(SequenceIndex(5), 100000, 2, SampleMethod::log_sum);
  const double d = detail::ks_two_sample_statistic(a.values, b.values);
  CHECK(d > 1.63 * std::sqrt(2.0 / 100000.0));
}

TEST_CASE("inverse_symmetry_check for even n, parity error for odd") {
  CHECK(inverse_symmetry_check(SequenceIndex(2), 100000, 5052).pass);
  CHECK(inverse_symmetry_check(SequenceIndex(4), 100000, 5054).pass);
  CHECK_THROWS_AS(inverse_symmetry_check(SequenceIndex(3), 1000, 1),
                  std::invalid_argument);
}

TEST_CASE("sample_wn validation") {
  CHECK_THROWS_AS(sample_wn(SequenceIndex(1), 0, 1, SampleMethod::log_sum),
                  std::invalid_argument);
  CHECK_THROWS_AS(SequenceIndex(0), std::invalid_argument);
}
