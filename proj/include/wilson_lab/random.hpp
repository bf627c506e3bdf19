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

#ifndef WILSON_LAB_RANDOM_HPP
#define WILSON_LAB_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include <boost/math/special_functions/erf.hpp>

/**
 * \file
 * \brief Philox4x32-10 counter-based generator and stateless normal draws.
 *
 * A draw is a pure function of (seed, stream, sample index, flat index), so
 * any subset of samples can be regenerated on any worker in any order.
 */

namespace wilson_lab {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Distinct stream tags keep unrelated consumers of one seed apart.
enum class Stream : std::uint32_t {
  field = 1,
  wgrid = 2,
  free_field = 3,
  test = 15,
};

/// Open-interval uniform with 53 random bits.
inline double uniform_from_words(std::uint32_t high, std::uint32_t low) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(high) << 20) | (low >> 12);
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

/// Standard normal quantile of u in (0, 1).
inline double normal_quantile(double u) {
  using Policy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u, Policy());
}

/**
 * Stateless generator of standard normals keyed by (seed, stream, sample).
 * Each Philox block yields two normals; `normal(i)` is the i-th of the stream.
 */
class CounterNormals {
 public:
  CounterNormals(std::uint64_t seed, Stream stream, std::uint64_t sample)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        sample_(sample),
        stream_(static_cast<std::uint32_t>(stream)) {}

  [[nodiscard]] std::array<double, 2> pair(std::uint64_t block) const {
    const Philox4x32::Counter ctr = {
        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
        static_cast<std::uint32_t>(sample_),
        (stream_ << 16) ^ static_cast<std::uint32_t>((sample_ >> 32) & 0xFFFFu)};
    const auto words = Philox4x32::generate(ctr, key_);
    return {normal_quantile(uniform_from_words(words[0], words[1])),
            normal_quantile(uniform_from_words(words[2], words[3]))};
  }

  [[nodiscard]] double normal(std::uint64_t index) const { return pair(index / 2)[index % 2]; }

  /// Fills out[0..count) with normals 0..count-1 of this stream, times `scale`.
  template <class Out>
  void fill(Out* out, std::uint64_t count, double scale) const {
    std::uint64_t i = 0;
    for (std::uint64_t block = 0; i < count; ++block) {
      const auto z = pair(block);
      out[i++] = static_cast<Out>(scale * z[0]);
      if (i < count) {
        out[i++] = static_cast<Out>(scale * z[1]);
      }
    }
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t sample_;
  std::uint32_t stream_;
};

}  // namespace wilson_lab

#endif  // WILSON_LAB_RANDOM_HPP
