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

#ifndef WILSON_LAB_QUADRATURE_HPP
#define WILSON_LAB_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "wilson_lab/common.hpp"

namespace wilson_lab {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

inline GaussRule gauss_legendre(std::size_t order) {
  detail::require(order >= 1, "Gauss-Legendre order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const auto n = static_cast<double>(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    // [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

/// Tensor-product rule on the unit square I^2.
struct SurfaceQuadrature {
  std::vector<std::pair<double, double>> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

inline SurfaceQuadrature tensor_rule(const GaussRule& s_rule, const GaussRule& t_rule) {
  SurfaceQuadrature q;
  q.nodes.reserve(s_rule.size() * t_rule.size());
  q.weights.reserve(s_rule.size() * t_rule.size());
  for (std::size_t i = 0; i < s_rule.size(); ++i) {
    for (std::size_t j = 0; j < t_rule.size(); ++j) {
      q.nodes.emplace_back(s_rule.nodes[i], t_rule.nodes[j]);
      q.weights.push_back(s_rule.weights[i] * t_rule.weights[j]);
    }
  }
  return q;
}

inline SurfaceQuadrature tensor_rule(std::size_t order) {
  const GaussRule rule = gauss_legendre(order);
  return tensor_rule(rule, rule);
}

}  // namespace wilson_lab

#endif  // WILSON_LAB_QUADRATURE_HPP
