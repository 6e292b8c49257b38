/*
 * Copyright 2026 The CDT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Stratified 2x2 statistics: contingency tables, the Mantel-Haenszel partial
// association test, chi-square utilities and stratified effect estimates.

#ifndef CDT_STATS_H_
#define CDT_STATS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cdt/dataset.h"

namespace cdt {

// Candidate Q (rows) against outcome Y (columns), weighted counts.
//
//            Y=1   Y=0
//    Q=1     n11   n12
//    Q=0     n21   n22
struct StratumTable {
  uint64_t n11 = 0;
  uint64_t n12 = 0;
  uint64_t n21 = 0;
  uint64_t n22 = 0;

  uint64_t row1() const { return n11 + n12; }  // n1.
  uint64_t row2() const { return n21 + n22; }  // n2.
  uint64_t col1() const { return n11 + n21; }  // n.1
  uint64_t col2() const { return n12 + n22; }  // n.2
  uint64_t total() const { return n11 + n12 + n21 + n22; }

  friend bool operator==(const StratumTable&, const StratumTable&) = default;
};

struct Stratum {
  std::vector<uint8_t> key;  // values of the stratifying attributes, in order
  StratumTable table;

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct StrataSet {
  std::vector<size_t> stratifying;
  std::vector<Stratum> strata;  // ascending key order from stratify()

  size_t size() const { return strata.size(); }
};

struct PamhResult {
  std::optional<double> statistic;  // nullopt: not applicable (no variance)
  std::vector<double> numerator_terms;
  std::vector<double> variance_terms;
  double alpha = 0.05;
  double critical_value = 0.0;
  bool significant = false;
};

struct StratumEffect {
  std::vector<uint8_t> key;
  std::optional<double> effect;
  double weight = 0.0;  // share of the total weight held by this stratum
};

struct AceEstimate {
  std::vector<StratumEffect> per_stratum;
  std::optional<double> aggregate;
};

// Largest number of stratifying attributes a stratum key can hold.
inline constexpr size_t kMaxStratifying = 62;

// Groups the view's records by their values on `stratifying` (sort-based)
// and tabulates candidate x outcome per group. Throws std::invalid_argument
// when the candidate is among the stratifying attributes, an index is out
// of range, repeated or assigned by the view's context, or there are more
// than kMaxStratifying stratifying attributes.
StrataSet stratify(const ContextView& view, size_t candidate,
                   std::span<const size_t> stratifying);

// The single-stratum table of attribute x outcome over the whole view.
StratumTable cross_table(const ContextView& view, size_t attribute);

// (n11 n22) / (n12 n21); nullopt when the denominator is zero.
std::optional<double> odds_ratio(const StratumTable& t);

// Mantel-Haenszel statistic with the 1/2 continuity correction, compared
// against the chi-square(1) critical value at `alpha`. Strata with fewer than
// two records contribute nothing. Throws std::invalid_argument unless
// 0 < alpha < 1.
PamhResult pamh(const StrataSet& strata, double alpha);

// Upper-p quantile of the standard normal distribution, 0 < p < 1.
double normal_upper_quantile(double p);

// Upper-alpha quantile of chi-square with one degree of freedom.
double chi2_critical(double alpha);

// Pearson chi-square without continuity correction; 0 if a margin is zero.
double pearson_chi2(const StratumTable& t);

// Candidates whose Pearson chi-square with the outcome reaches
// chi2_critical(alpha), strongest first (ties by index), at most `cap`.
std::vector<size_t> correlated_attributes(const ContextView& view,
                                          std::span<const size_t> candidates,
                                          double alpha, size_t cap);

// n11/n1. - n21/n2.; nullopt if either group is empty.
std::optional<double> naive_ace(const StratumTable& t);

AceEstimate stratified_ace(const StrataSet& strata);

}  // namespace cdt

#endif  // CDT_STATS_H_
