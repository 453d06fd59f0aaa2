// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nestexp/constants.hpp"
#include "nestexp/distribution_core.hpp"
#include "nestexp/types.hpp"

namespace nestexp {

enum class SampleMethod {
  nested,   // Y_1 ~ Exp(1), Y_j ~ Exp(rate Y_{j-1}), return ln Y_n
  log_sum,  // signed sum of ln X_j with the parity split of the product form
};

inline const char* to_string(SampleMethod m) {
  return m == SampleMethod::nested ? "nested" : "log_sum";
}

namespace detail {

// Counter-based uniform stream: draw c of stream s is
//   mix64(s + (c+1) * 0x9E3779B97F4A7C15)
// (SplitMix64 evaluated at an arbitrary counter offset). Any chunking or
// thread layout reproduces the single-threaded stream bit for bit, because
// draws are pure functions of (seed, counter).
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Uniform on the 2^53-point grid ((h >> 11) + 0.5) * 2^-53, i.e. inside
// [2^-54, 1 - 2^-54]: endpoints excluded so ln(-ln U) stays finite.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t h =
      mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(std::uint64_t seed, std::uint64_t counter) {
  return -std::log(uniform01(seed, counter));
}

}  // namespace detail

struct SampleBatch {
  SequenceIndex n;
  SampleMethod method;
  std::uint64_t seed;
  std::vector<double> values;  // draws of W_n = ln(Y_n)

  std::size_t count() const noexcept { return values.size(); }
};

/// Draws `count` samples of W_n. Sample i consumes the n uniforms with
/// counters i*n .. i*n + n - 1, so batches are reproducible bit for bit from
/// (n, method, seed, count) alone.
inline SampleBatch sample_wn(SequenceIndex n, std::size_t count,
                             std::uint64_t seed, SampleMethod method) {
  if (count < 1) throw std::invalid_argument("sample_wn: count must be >= 1");
  SampleBatch batch{n, method, seed, {}};
  batch.values.resize(count);
  const std::uint64_t nn = n.n();
  // numerator term count of the signed Gumbel sum: (n+1)/2 odd, n/2 even
  const std::uint64_t positive = n.odd() ? (nn + 1) / 2 : nn / 2;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * nn;
    double w = 0.0;
    if (method == SampleMethod::log_sum) {
      for (std::uint64_t j = 0; j < nn; ++j) {
        const double lnx =
            std::log(detail::standard_exponential(seed, base + j));
        w += (j < positive) ? lnx : -lnx;
      }
    } else {
      // rates, not means: Y_j = E_j / Y_{j-1}, kept in log scale
      w = std::log(detail::standard_exponential(seed, base));
      for (std::uint64_t j = 1; j < nn; ++j)
        w = std::log(detail::standard_exponential(seed, base + j)) - w;
    }
    batch.values[i] = w;
  }
  return batch;
}

struct CdfEstimate {
  double estimate;  // fraction of draws <= point
  double std_err;   // sqrt(p(1-p)/count)
};

inline CdfEstimate empirical_cdf_at(const SampleBatch& batch, double point) {
  if (batch.values.empty())
    throw std::invalid_argument("empirical_cdf_at: empty batch");
  const auto le = static_cast<double>(
      std::count_if(batch.values.begin(), batch.values.end(),
                    [point](double v) { return v <= point; }));
  const double p = le / static_cast<double>(batch.count());
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(batch.count()))};
}

struct DistTestReport {
  double statistic;
  double threshold;
  bool pass;  // statistic <= threshold
  std::size_t sample_count;
};

inline DistTestReport make_report(double statistic, double threshold,
                                  std::size_t count) {
  return {statistic, threshold, statistic <= threshold, count};
}

// Asymptotic one-sided KS critical value at alpha ~ 0.01.
inline constexpr double kKsCritical01 = 1.63;
// Relaxed factor for the CLT check, absorbing finite-n skew.
inline constexpr double kKsCriticalClt = 2.2;

/// One-sample Kolmogorov-Smirnov test against a monotone reference CDF.
inline DistTestReport ks_test(const SampleBatch& batch,
                              const std::function<double(double)>& reference_cdf) {
  std::vector<double> sorted = batch.values;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double fx = reference_cdf(sorted[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - fx);
    d = std::max(d, fx - static_cast<double>(i) / n);
  }
  return make_report(d, kKsCritical01 / std::sqrt(n), sorted.size());
}

namespace detail {

// Two-sample KS distance between equally weighted samples.
inline double ks_two_sample_statistic(std::vector<double> a,
                                      std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace detail

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// CLT check: W_n standardized by pi sqrt(n/6) against the normal
/// law centered at -gamma (odd n) or 0 (even n) on the W axis -- the center
/// rides through the same scaling, so the standardized reference is
/// Normal(mu/scale, 1). Relaxed threshold 2.2/sqrt(count) absorbs finite-n
/// skew. Uses the log_sum construction (the CLT regime needs n >= 100).
inline DistTestReport clt_check(SequenceIndex n, std::size_t count,
                                std::uint64_t seed) {
  if (n.n() < 100)
    throw std::invalid_argument("clt_check: asymptotic regime needs n >= 100");
  if (count < 10000)
    throw std::invalid_argument("clt_check: count must be >= 1e4");
  SampleBatch batch = sample_wn(n, count, seed, SampleMethod::log_sum);
  const double scale = kPi * std::sqrt(static_cast<double>(n.n()) / 6.0);
  for (double& v : batch.values) v /= scale;
  const double mu = (n.odd() ? -kEulerGamma : 0.0) / scale;
  std::vector<double> sorted = batch.values;
  std::sort(sorted.begin(), sorted.end());
  const auto cnt = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double fx = normal_cdf(sorted[i] - mu);
    d = std::max(d, (static_cast<double>(i) + 1.0) / cnt - fx);
    d = std::max(d, fx - static_cast<double>(i) / cnt);
  }
  return make_report(d, kKsCriticalClt / std::sqrt(cnt), sorted.size());
}

/// Distributional identity of the nested and product constructions: two-sample
/// KS between a nested-method batch and a log_sum-method batch.
inline DistTestReport equivalence_check(SequenceIndex n, std::size_t count,
                                        std::uint64_t seed_a,
                                        std::uint64_t seed_b) {
  const SampleBatch a = sample_wn(n, count, seed_a, SampleMethod::nested);
  const SampleBatch b = sample_wn(n, count, seed_b, SampleMethod::log_sum);
  const double d = detail::ks_two_sample_statistic(a.values, b.values);
  return make_report(
      d, kKsCritical01 * std::sqrt(2.0 / static_cast<double>(count)), count);
}

/// Even-n inverse symmetry (Y ~ 1/Y, i.e. W ~ -W): two-sample KS between the
/// batch and its negation. Throws for odd n.
inline DistTestReport inverse_symmetry_check(SequenceIndex n, std::size_t count,
                                             std::uint64_t seed) {
  if (n.odd())
    throw std::invalid_argument(
        "inverse_symmetry_check: symmetry holds for even n only");
  const SampleBatch batch = sample_wn(n, count, seed, SampleMethod::log_sum);
  std::vector<double> negated = batch.values;
  for (double& v : negated) v = -v;
  const double d = detail::ks_two_sample_statistic(batch.values, negated);
  return make_report(
      d, kKsCritical01 * std::sqrt(2.0 / static_cast<double>(count)), count);
}

struct MomentSummary {
  double mean;
  double variance;
  double se_mean;      // sd / sqrt(count)
  double se_variance;  // sqrt((m4 - var^2) / count), fourth-moment estimate
};

inline MomentSummary moment_summary(const SampleBatch& batch) {
  const auto n = static_cast<double>(batch.count());
  if (n < 2) throw std::invalid_argument("moment_summary: need >= 2 samples");
  double mean = 0.0;
  for (double v : batch.values) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : batch.values) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double var = m2 * n / (n - 1.0);
  return {mean, var, std::sqrt(var / n), std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

}  // namespace nestexp
