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

#include "cdt/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "cdt/kernels.h"

namespace cdt {
namespace {

using int128 = __int128;

// Widest stratifying set counted through a dense array instead of a sort.
constexpr size_t kDenseMaxWidth = 18;

void CheckAlpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

StratumTable TableFromCounts(const kernels::CrossCounts& c) {
  StratumTable t;
  t.n11 = c.x1y1;
  t.n12 = c.x1 - c.x1y1;
  t.n21 = c.y1 - c.x1y1;
  t.n22 = c.total - c.x1 - c.y1 + c.x1y1;
  return t;
}

long double MarginProduct(const StratumTable& t) {
  const int128 rows = static_cast<int128>(t.row1()) * t.row2();
  const int128 cols = static_cast<int128>(t.col1()) * t.col2();
  return static_cast<long double>(rows) * static_cast<long double>(cols);
}

int128 CrossDifference(const StratumTable& t) {
  return static_cast<int128>(t.n11) * t.n22 - static_cast<int128>(t.n21) * t.n12;
}

// Acklam's rational approximation to the lower-tail normal quantile.
double AcklamLowerQuantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - kLow) {
    const double q = std::sqrt(-2 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

StrataSet stratify(const ContextView& view, size_t candidate,
                   std::span<const size_t> stratifying) {
  const size_t m = view.base().num_attributes();
  if (candidate >= m) throw std::invalid_argument("stratify: candidate out of range");
  if (view.is_assigned(candidate)) {
    throw std::invalid_argument("stratify: candidate is assigned by the context");
  }
  if (stratifying.size() > kMaxStratifying) {
    throw std::invalid_argument("stratify: too many stratifying attributes");
  }
  for (size_t j = 0; j < stratifying.size(); ++j) {
    const size_t s = stratifying[j];
    if (s >= m) throw std::invalid_argument("stratify: attribute out of range");
    if (s == candidate) {
      throw std::invalid_argument("stratify: candidate appears in the stratifying set");
    }
    if (view.is_assigned(s)) {
      throw std::invalid_argument("stratify: stratifying attribute is assigned by the context");
    }
    if (std::find(stratifying.begin(), stratifying.begin() + j, s) !=
        stratifying.begin() + j) {
      throw std::invalid_argument("stratify: repeated stratifying attribute");
    }
  }

  const ColumnBlock& rows = view.rows();
  const size_t n = rows.rows();
  const size_t width = stratifying.size();
  const kernels::KernelTable& k = kernels::active();

  // Bit layout: [stratum key, first attribute most significant][Q][Y].
  std::vector<uint64_t> keys(n, 0);
  for (size_t j = 0; j < width; ++j) {
    k.or_shifted(rows.columns[stratifying[j]].data(),
                 static_cast<unsigned>(2 + (width - 1 - j)), keys.data(), n);
  }
  k.or_shifted(rows.columns[candidate].data(), 1, keys.data(), n);
  k.or_shifted(rows.outcome.data(), 0, keys.data(), n);

  StrataSet out;
  out.stratifying.assign(stratifying.begin(), stratifying.end());
  auto emit = [&](uint64_t stratum) -> StratumTable& {
    Stratum s;
    s.key.resize(width);
    for (size_t j = 0; j < width; ++j) {
      s.key[j] = static_cast<uint8_t>((stratum >> (width - 1 - j)) & 1);
    }
    out.strata.push_back(std::move(s));
    return out.strata.back().table;
  };
  // Low two key bits: 3 -> n11 (Q=1, Y=1), 2 -> n12, 1 -> n21, 0 -> n22.
  auto add = [](StratumTable& t, uint64_t cell, uint64_t w) {
    (cell == 3 ? t.n11 : cell == 2 ? t.n12 : cell == 1 ? t.n21 : t.n22) += w;
  };

  // Few key bits relative to n: count into a dense array, which visits the
  // keys in ascending order without sorting.
  const size_t cells = size_t{4} << std::min<size_t>(width, 40);
  if (width <= kDenseMaxWidth && cells <= 16 * n + 4096) {
    std::vector<uint64_t> dense(cells, 0);
    for (size_t i = 0; i < n; ++i) dense[keys[i]] += rows.weights[i];
    for (size_t stratum = 0; stratum < (cells >> 2); ++stratum) {
      const uint64_t* c = &dense[stratum << 2];
      if (c[0] + c[1] + c[2] + c[3] == 0) continue;
      StratumTable& t = emit(stratum);
      for (uint64_t cell = 0; cell < 4; ++cell) add(t, cell, c[cell]);
    }
    return out;
  }

  std::vector<std::pair<uint64_t, uint32_t>> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = {keys[i], rows.weights[i]};
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < n;) {
    const uint64_t stratum = order[i].first >> 2;
    StratumTable& t = emit(stratum);
    for (; i < n && (order[i].first >> 2) == stratum; ++i) {
      add(t, order[i].first & 3, order[i].second);
    }
  }
  return out;
}

StratumTable cross_table(const ContextView& view, size_t attribute) {
  const ColumnBlock& rows = view.rows();
  return TableFromCounts(kernels::active().cross_counts(
      rows.columns.at(attribute).data(), rows.outcome.data(),
      rows.weights.data(), rows.rows()));
}

std::optional<double> odds_ratio(const StratumTable& t) {
  const int128 den = static_cast<int128>(t.n12) * t.n21;
  if (den == 0) return std::nullopt;
  const int128 num = static_cast<int128>(t.n11) * t.n22;
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

PamhResult pamh(const StrataSet& strata, double alpha) {
  CheckAlpha(alpha);
  PamhResult result;
  result.alpha = alpha;
  result.critical_value = chi2_critical(alpha);
  const size_t r = strata.size();
  result.numerator_terms.assign(r, 0.0);
  result.variance_terms.assign(r, 0.0);
  std::vector<long double> num(r, 0.0L), var(r, 0.0L);
  for (size_t k = 0; k < r; ++k) {
    const StratumTable& t = strata.strata[k].table;
    const uint64_t n = t.total();
    if (n < 2) continue;
    const long double nn = static_cast<long double>(n);
    num[k] = static_cast<long double>(CrossDifference(t)) / nn;
    var[k] = MarginProduct(t) / (nn * nn * (nn - 1));
    result.numerator_terms[k] = static_cast<double>(num[k]);
    result.variance_terms[k] = static_cast<double>(var[k]);
  }

  // Sum in key order so the statistic does not depend on the order strata
  // were supplied in.
  std::vector<size_t> order(r);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return strata.strata[a].key < strata.strata[b].key;
  });
  long double sum_num = 0.0L, sum_var = 0.0L;
  for (size_t k : order) {
    sum_num += num[k];
    sum_var += var[k];
  }
  if (sum_var > 0.0L) {
    const long double corrected = std::max(std::fabs(sum_num) - 0.5L, 0.0L);
    result.statistic = static_cast<double>(corrected * corrected / sum_var);
    result.significant = *result.statistic >= result.critical_value;
  }
  return result;
}

double normal_upper_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_upper_quantile: p must lie in (0, 1)");
  }
  // Lower quantile of 1 - p, i.e. -lower(p); one Halley step against erfc
  // brings Acklam's 1e-9 relative error to machine precision.
  double x = AcklamLowerQuantile(p);
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  x = x - u / (1 + x * u / 2);
  return -x;
}

double chi2_critical(double alpha) {
  CheckAlpha(alpha);
  const double z = normal_upper_quantile(alpha / 2);
  return z * z;
}

double pearson_chi2(const StratumTable& t) {
  const long double margins = MarginProduct(t);
  if (margins == 0.0L) return 0.0;
  const long double diff = static_cast<long double>(CrossDifference(t));
  return static_cast<double>(static_cast<long double>(t.total()) * diff * diff /
                             margins);
}

std::vector<size_t> correlated_attributes(const ContextView& view,
                                          std::span<const size_t> candidates,
                                          double alpha, size_t cap) {
  CheckAlpha(alpha);
  if (cap == 0) throw std::invalid_argument("correlated_attributes: cap must be >= 1");
  const double critical = chi2_critical(alpha);
  std::vector<std::pair<double, size_t>> scored;
  for (size_t a : candidates) {
    const double stat = pearson_chi2(cross_table(view, a));
    if (stat >= critical) scored.emplace_back(stat, a);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  if (scored.size() > cap) scored.resize(cap);
  std::vector<size_t> out;
  out.reserve(scored.size());
  for (const auto& [stat, a] : scored) out.push_back(a);
  return out;
}

std::optional<double> naive_ace(const StratumTable& t) {
  if (t.row1() == 0 || t.row2() == 0) return std::nullopt;
  return static_cast<double>(t.n11) / static_cast<double>(t.row1()) -
         static_cast<double>(t.n21) / static_cast<double>(t.row2());
}

AceEstimate stratified_ace(const StrataSet& strata) {
  AceEstimate out;
  uint64_t total = 0;
  for (const auto& s : strata.strata) total += s.table.total();
  long double weighted = 0.0L;
  uint64_t defined_weight = 0;
  for (const auto& s : strata.strata) {
    StratumEffect e;
    e.key = s.key;
    e.effect = naive_ace(s.table);
    e.weight = total == 0 ? 0.0
                          : static_cast<double>(s.table.total()) /
                                static_cast<double>(total);
    if (e.effect) {
      weighted += static_cast<long double>(*e.effect) * s.table.total();
      defined_weight += s.table.total();
    }
    out.per_stratum.push_back(std::move(e));
  }
  if (defined_weight > 0) {
    out.aggregate = static_cast<double>(weighted / defined_weight);
  }
  return out;
}

}  // namespace cdt
