// Copyright 2026 The Wilson Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WILSON_LAB_STATS_HPP
#define WILSON_LAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wilson_lab/common.hpp"

/**
 * \file
 * \brief Deterministic reductions and Monte-Carlo error estimates.
 */

namespace wilson_lab {

/// Pairwise (tree) summation in index order; result is independent of threading.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) {
    return T{};
  }
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      acc += values[i];
    }
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanEstimate mean_estimate(std::span<const double> values) {
  MeanEstimate out;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) {
    return out;
  }
  out.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [m = out.mean](double v) { return (v - m) * (v - m); });
    const double variance = pairwise_sum(std::span<const double>(sq)) / (n - 1.0);
    out.std_error = std::sqrt(variance / n);
  }
  return out;
}

struct RatioEstimate {
  Complex value;
  double std_error = 0.0;
};

/**
 * Self-normalized estimate sum(num)/sum(den) with a batch-means standard
 * error: samples are split into `batches` contiguous groups, one ratio per
 * group, and the spread of the group ratios gives the error (which also
 * absorbs the ratio bias). Real and imaginary spreads are combined.
 */
inline RatioEstimate ratio_estimate(std::span<const Complex> num, std::span<const double> den,
                                    std::size_t batches = 20) {
  detail::require(num.size() == den.size() && !num.empty(), "ratio estimate needs matched samples");
  RatioEstimate out;
  out.value = pairwise_sum(num) / pairwise_sum(den);
  batches = std::clamp<std::size_t>(batches, 1, num.size());
  if (batches < 2) {
    return out;
  }
  std::vector<Complex> ratios(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * num.size() / batches;
    const std::size_t hi = (b + 1) * num.size() / batches;
    ratios[b] = pairwise_sum(num.subspan(lo, hi - lo)) / pairwise_sum(den.subspan(lo, hi - lo));
  }
  const Complex mean = pairwise_sum(std::span<const Complex>(ratios)) / static_cast<double>(batches);
  double acc = 0.0;
  for (const Complex& r : ratios) {
    acc += std::norm(r - mean);
  }
  const double variance = acc / static_cast<double>(batches - 1);
  out.std_error = std::sqrt(variance / static_cast<double>(batches));
  return out;
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic KS critical value at significance 1e-3: sqrt(-log(alpha/2)/2)/sqrt(n).
inline double ks_critical_1e3(std::size_t n) {
  return std::sqrt(-std::log(0.0005) / 2.0) / std::sqrt(static_cast<double>(n));
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_STATS_HPP
