// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nestexp/compensated.hpp"
#include "nestexp/constants.hpp"
#include "nestexp/distribution_core.hpp"
#include "nestexp/integer_sequences.hpp"

namespace nestexp {

// Hard cap on the partial-sum order; the coefficient table is generated up to
// this index plus the derivative offset.
inline constexpr std::size_t kMaxPartialSumOrder = 500;

/// One Taylor-series evaluation request: the m-th partial sum of
///   sum_l (delta_ref B_{l+k} - A_{l+k}) w^l / l!
struct SeriesQuery {
  std::size_t k = 0;            // derivative order
  double w = 0.0;               // expansion argument
  std::size_t m = 0;            // partial-sum order
  double delta_ref = kEulerGompertz;

  void validate() const {
    if (m > kMaxPartialSumOrder)
      throw std::invalid_argument("SeriesQuery: m > 500");
    if (!(delta_ref > 0.59 && delta_ref < 0.60))
      throw std::invalid_argument("SeriesQuery: delta_ref outside (0.59, 0.60)");
  }
};

struct RemainderEstimate {
  std::size_t m = 0;
  double bound_shape = 0.0;
  bool converged = false;
};

/// Holds the exact Bell/Gould columns (as 50-digit floats, converted once
/// from the integers) and evaluates partial sums. Immutable after
/// construction; safe to share across threads.
class TaylorEngine {
 public:
  /// Table covers indices 0..max_index. B_500 has ~844 digits, far beyond
  /// double range, so coefficients stay in 50-digit arithmetic until each
  /// term (which is always of moderate size) is formed.
  explicit TaylorEngine(std::size_t max_index = kMaxPartialSumOrder + 60) {
    const CoefficientTable table(max_index + 1);
    bell_.reserve(max_index + 1);
    gould_.reserve(max_index + 1);
    for (std::size_t k = 0; k <= max_index; ++k) {
      bell_.emplace_back(table.bell(k));
      gould_.emplace_back(table.gould(k));
    }
  }

  std::size_t max_index() const noexcept { return bell_.size() - 1; }

  /// Terms (delta_ref B_{l+k} - A_{l+k}) w^l / l! for l = 0..m, each formed in
  /// 50-digit arithmetic and rounded to double at the last step.
  std::vector<double> terms(const SeriesQuery& q) const {
    q.validate();
    if (q.m + q.k > max_index())
      throw std::out_of_range("TaylorEngine: m + k exceeds the generated table");
    const Float50 delta(q.delta_ref);
    const Float50 w(q.w);
    std::vector<double> out;
    out.reserve(q.m + 1);
    Float50 w_pow_over_fact(1);  // w^l / l!
    for (std::size_t l = 0; l <= q.m; ++l) {
      if (l > 0) w_pow_over_fact *= w / Float50(static_cast<unsigned>(l));
      const Float50 coef = delta * bell_[l + q.k] - gould_[l + q.k];
      out.push_back((coef * w_pow_over_fact).convert_to<double>());
    }
    return out;
  }

  /// Kahan-compensated forward sum of terms().
  double partial_sum(const SeriesQuery& q) const {
    dd::KahanSum s;
    for (double t : terms(q)) s.add(t);
    return s.value();
  }

 private:
  std::vector<Float50> bell_;
  std::vector<Float50> gould_;
};

/// Shape of the partial-sum remainder envelope obtained from the Berend-Tassa
/// bound and Stirling's formula, with the coefficient-decay rate constant c1
/// (known to exist, value unknown) set to 0 (conservative):
///   (0.792 e)^{m+k+1} (m+k+1)^k |w|^{m+1}
///   --------------------------------------- ,
///   sqrt(m+1) (ln(m+k+2))^{m+k+1}
/// evaluated in log space. A diagnostic envelope, not a certified bound:
/// it converges to 0 in m for every fixed (k, w) and diverges in w and k.
inline RemainderEstimate remainder_shape(std::size_t m, std::size_t k,
                                         double w) {
  if (m < 1) throw std::invalid_argument("remainder_shape: m must be >= 1");
  const auto log_shape = [k](std::size_t mm, double ww) {
    if (ww == 0.0) return -std::numeric_limits<double>::infinity();
    const double mk = static_cast<double>(mm + k + 1);
    return mk * (std::log(0.792 * kE) - std::log(std::log(mk + 1.0))) +
           static_cast<double>(k) * std::log(mk) +
           (static_cast<double>(mm) + 1.0) * std::log(std::abs(ww)) -
           0.5 * std::log(static_cast<double>(mm) + 1.0);
  };
  RemainderEstimate est;
  est.m = m;
  est.bound_shape = std::exp(log_shape(m, w));
  est.converged = log_shape(m, w) < log_shape(m / 2, w);
  return est;
}

/// Euler-Gompertz constant via Hardy's relation
///   delta = e (-gamma + sum_{k=1}^terms (-1)^{k+1} / (k k!)),
/// alternating-series remainder <= e / ((terms+1) (terms+1)!).
inline double hardy_delta(int terms, double gamma_ref) {
  if (terms < 1) throw std::invalid_argument("hardy_delta: terms must be >= 1");
  dd::DoubleDouble sum{-gamma_ref, 0.0};
  dd::DoubleDouble inv_kfact{1.0, 0.0};  // 1/k!
  for (int k = 1; k <= terms; ++k) {
    inv_kfact = dd::div(inv_kfact, static_cast<double>(k));
    dd::DoubleDouble term = dd::div(inv_kfact, static_cast<double>(k));
    if (k % 2 == 0) term = dd::mul(term, -1.0);
    sum = dd::add(sum, term);
  }
  return kE * dd::to_double(sum);
}

/// Tail probe G(w) + w: the survival integral approaches the asymptote
/// -gamma - w, so this tends to -gamma as w -> -inf with error O(|w| e^w).
inline double survival_tail_gap(double w) {
  if (!(w < 0.0)) throw std::domain_error("survival_tail_gap: w must be < 0");
  return g_function(w) + w;
}

}  // namespace nestexp
