/*
 * Copyright 2026 The EviNet Authors.
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

#ifndef EVINET_NUMERICS_RANDOM_H_
#define EVINET_NUMERICS_RANDOM_H_

#include <array>
#include <cstdint>
#include <vector>

#include "evinet/numerics/dense_matrix.h"

namespace evinet::numerics {

// xoshiro256** seeded through splitmix64. Every derived draw (uniform,
// bounded integer, normal, permutation) is implemented here rather than
// through <random> distributions, whose output is implementation-defined,
// so a seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  Real Uniform();
  Real Uniform(Real lo, Real hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, bound), unbiased (Lemire rejection).
  std::uint64_t UniformInt(std::uint64_t bound);
  // Standard normal via the Box-Muller transform (one cached spare).
  Real Normal();
  bool Bernoulli(Real p) { return Uniform() < p; }
  // Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> Permutation(std::size_t n);
  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UniformInt(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream keyed by `stream`.
  Rng Fork(std::uint64_t stream) const;

 private:
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  Real spare_ = 0.0;
};

// One splitmix64 step: mixes a 64-bit key into a well-distributed value.
std::uint64_t SplitMix64(std::uint64_t& state);

DenseMatrix RandomNormalMatrix(std::size_t rows, std::size_t cols, Rng& rng,
                               Real stddev = 1.0);
DenseMatrix RandomUniformMatrix(std::size_t rows, std::size_t cols, Rng& rng,
                                Real lo, Real hi);
// U(-l, l) with l = sqrt(6 / (rows + cols)).
DenseMatrix GlorotUniform(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_RANDOM_H_
