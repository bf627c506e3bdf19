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
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "wilson_lab/random.hpp"
#include "wilson_lab/stats.hpp"

namespace wl = wilson_lab;

TEST(Philox, KnownAnswerVectors) {
  using C = wl::Philox4x32::Counter;
  using K = wl::Philox4x32::Key;
  EXPECT_EQ(wl::Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(wl::Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(wl::Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterNormals, PureFunctionOfCoordinates) {
  const wl::CounterNormals a(42, wl::Stream::test, 7);
  const wl::CounterNormals b(42, wl::Stream::test, 7);
  std::vector<double> x(101);
  a.fill(x.data(), x.size(), 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i], b.normal(i));
  }
  EXPECT_NE(wl::CounterNormals(42, wl::Stream::test, 8).normal(0), x[0]);
  EXPECT_NE(wl::CounterNormals(43, wl::Stream::test, 7).normal(0), x[0]);
  EXPECT_NE(wl::CounterNormals(42, wl::Stream::field, 7).normal(0), x[0]);
  // high sample bits reach the counter
  EXPECT_NE(wl::CounterNormals(42, wl::Stream::test, 7 + (1ull << 32)).normal(0), x[0]);
}

TEST(CounterNormals, UniformsStayInsideOpenInterval) {
  EXPECT_GT(wl::uniform_from_words(0, 0), 0.0);
  EXPECT_LT(wl::uniform_from_words(0xffffffff, 0xffffffff), 1.0);
  EXPECT_TRUE(std::isfinite(wl::normal_quantile(wl::uniform_from_words(0, 0))));
  EXPECT_TRUE(std::isfinite(wl::normal_quantile(wl::uniform_from_words(0xffffffff, 0xffffffff))));
  EXPECT_NEAR(wl::normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(CounterNormals, KolmogorovSmirnovAgainstStandardNormal) {
  std::vector<double> x(10000);
  wl::CounterNormals(2024, wl::Stream::test, 0).fill(x.data(), x.size(), 1.0);
  const double d = wl::ks_statistic(x, [](double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); });
  EXPECT_LT(d, wl::ks_critical_1e3(x.size()));
}

TEST(Stats, PairwiseSumAndRatio) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<double>(i);
  }
  EXPECT_EQ(wl::pairwise_sum(std::span<const double>(v)), 499500.0);
  const wl::MeanEstimate m = wl::mean_estimate(v);
  EXPECT_DOUBLE_EQ(m.mean, 499.5);
  EXPECT_NEAR(m.std_error, std::sqrt(1000.0 * 1001.0 / 12.0 / 1000.0), 1e-9);
  std::vector<wl::Complex> num(100, wl::Complex(2.0, 0.0));
  std::vector<double> den(100, 1.0);
  const wl::RatioEstimate r = wl::ratio_estimate(num, den);
  EXPECT_EQ(r.value, wl::Complex(2.0, 0.0));
  EXPECT_EQ(r.std_error, 0.0);
}
