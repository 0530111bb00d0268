// SPDX-License-Identifier: Apache-2.0
//
// mos - model order selection for antenna array snapshots
// Copyright (C) 2026 The mos authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace mos {

/// SplitMix64 finalizer; used to derive well-mixed seed material.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

/// Stream identifiers for deriving independent sub-generators from one root
/// seed. Every consumer of randomness owns a (purpose, index) pair, so the
/// generated content never depends on evaluation order or thread count.
enum class StreamPurpose : std::uint64_t {
  DatasetSample = 1,
  DatasetShuffle = 2,
  TrainSample = 3,
  TrainBatchOrder = 4,
  TrainEvalSet = 5,
  NetworkInit = 6,
  OnlineShuffle = 7,
  MeasuredData = 8,
  TestSet = 9,
};

/// xoshiro256++ generator with deterministic, portable output.
///
/// All randomness in this library flows through this engine rather than
/// <random> distributions, whose output is implementation defined. That keeps
/// datasets and training runs byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    // Seed expansion per the xoshiro reference: run SplitMix64 over the seed.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ull;
      word = mix64(x);
    }
  }

  /// Derives an independent generator from (root, purpose, index).
  static Rng stream(std::uint64_t root, StreamPurpose purpose, std::uint64_t index) noexcept {
    std::uint64_t h = mix64(root ^ 0x6A09E667F3BCC909ull);
    h = mix64(h ^ (static_cast<std::uint64_t>(purpose) * 0xD1342543DE82EF95ull));
    h = mix64(h ^ (index * 0xAF251AF3B0F025B5ull));
    return Rng{h};
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). Multiply-shift map; the O(bound/2^64)
  /// bias is irrelevant at the bounds used here (shuffles, index picks).
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Circular complex Gaussian CN(0, variance): real and imaginary parts are
  /// independent N(0, variance/2). Consumes exactly two uniforms.
  std::complex<double> complex_normal(double variance) noexcept {
    const auto [a, b] = normal_pair();
    const double s = std::sqrt(0.5 * variance);
    return {s * a, s * b};
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t v, int k) noexcept {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace mos
