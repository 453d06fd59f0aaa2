// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "nestexp/constants.hpp"

namespace nestexp {

// Exact arbitrary-precision integer. Values produced here are sums of
// products of non-negative integers, so non-negativity holds by construction.
using BigNat = boost::multiprecision::cpp_int;

// 50-decimal-digit binary float, used wherever an exact integer has to meet a
// real number (ratio gaps, Taylor coefficients).
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace detail {

// Pascal rows in exact arithmetic; row k holds C(k, 0..k).
inline std::vector<std::vector<BigNat>> pascal_rows(std::size_t k_max) {
  std::vector<std::vector<BigNat>> rows;
  rows.reserve(k_max + 1);
  rows.push_back({BigNat(1)});
  for (std::size_t n = 1; n <= k_max; ++n) {
    const auto& prev = rows.back();
    std::vector<BigNat> row(n + 1);
    row[0] = 1;
    row[n] = 1;
    for (std::size_t j = 1; j < n; ++j) row[j] = prev[j - 1] + prev[j];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

struct CoefficientRow {
  std::size_t k;
  BigNat bell;
  BigNat gould;
};

/// Joint (k, B_k, A_k) table, contiguous from k = 0, exact, with the
/// structural invariants checked at construction.
///
/// Bell column: B_0 = 1, B_{k+1} = sum_j C(k,j) B_j.
/// Gould column: A_0 = 0, A_1 = 1, A_{k+1} = sum_j C(k,j) A_j for k >= 1.
/// This pins the Gould sequence 0, 1, 1, 3, 9, 31, ... whose pairs give the
/// survival-integral derivatives G^(k)(0) = delta B_k - A_k; other sequences
/// published under the same name do not satisfy that relation.
class CoefficientTable {
 public:
  explicit CoefficientTable(std::size_t count) {
    if (count < 1)
      throw std::invalid_argument("CoefficientTable: count must be >= 1");
    const auto binom = detail::pascal_rows(count);
    std::vector<BigNat> b, a;
    b.reserve(count);
    a.reserve(count);
    b.push_back(1);
    a.push_back(0);
    if (count > 1) a.push_back(1);
    for (std::size_t k = 0; k + 1 < count; ++k) {
      BigNat next_b = 0;
      for (std::size_t j = 0; j <= k; ++j) next_b += binom[k][j] * b[j];
      b.push_back(std::move(next_b));
      if (k >= 1) {
        BigNat next_a = 0;
        for (std::size_t j = 0; j <= k; ++j) next_a += binom[k][j] * a[j];
        a.push_back(std::move(next_a));
      }
    }
    rows_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (k >= 2 && !(b[k] > b[k - 1]))
        throw std::logic_error("CoefficientTable: bell not increasing");
      if (a[k] > b[k])
        throw std::logic_error("CoefficientTable: gould exceeds bell");
      rows_.push_back({k, std::move(b[k]), std::move(a[k])});
    }
  }

  std::size_t size() const noexcept { return rows_.size(); }
  const BigNat& bell(std::size_t k) const { return rows_.at(k).bell; }
  const BigNat& gould(std::size_t k) const { return rows_.at(k).gould; }
  const std::vector<CoefficientRow>& rows() const noexcept { return rows_; }

 private:
  std::vector<CoefficientRow> rows_;
};

/// Bell numbers B_0 .. B_{count-1}, exact.
inline std::vector<BigNat> bell_numbers(std::size_t count) {
  const CoefficientTable table(count);
  std::vector<BigNat> out;
  out.reserve(count);
  for (const auto& row : table.rows()) out.push_back(row.bell);
  return out;
}

/// Gould numbers A_0 .. A_{count-1} (as pinned above), exact.
inline std::vector<BigNat> gould_numbers(std::size_t count) {
  const CoefficientTable table(count);
  std::vector<BigNat> out;
  out.reserve(count);
  for (const auto& row : table.rows()) out.push_back(row.gould);
  return out;
}

struct RatioGap {
  std::size_t k;
  double gap;  // |A_k / B_k - delta_ref|
};

/// Absolute gaps |A_k/B_k - delta_ref| for k = 0..k_max, with the division
/// carried in 50-digit arithmetic. The gap at k_max sits below the gap at 2;
/// decay is irregular pointwise (see tests for the window-decay statement).
inline std::vector<RatioGap> ratio_convergence(
    std::size_t k_max, double delta_ref = kEulerGompertz) {
  if (k_max < 2)
    throw std::invalid_argument("ratio_convergence: k_max must be >= 2");
  const CoefficientTable table(k_max + 1);
  std::vector<RatioGap> out;
  out.reserve(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const Float50 ratio = Float50(table.gould(k)) / Float50(table.bell(k));
    const Float50 gap = abs(ratio - Float50(delta_ref));
    out.push_back({k, gap.convert_to<double>()});
  }
  return out;
}

/// The Berend-Tassa envelope (0.792 l / ln(l+1))^l, an upper bound on B_l for
/// all l > 0.
inline double berend_tassa_bound(std::size_t l) {
  if (l == 0) throw std::invalid_argument("berend_tassa_bound: l must be > 0");
  const double dl = static_cast<double>(l);
  return std::pow(0.792 * dl / std::log(dl + 1.0), dl);
}

}  // namespace nestexp
