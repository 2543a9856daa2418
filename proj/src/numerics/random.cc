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

#include "evinet/numerics/random.h"

#include <cmath>
#include <numbers>
#include <numeric>

namespace evinet::numerics {
namespace {

inline std::uint64_t Rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) word = SplitMix64(s);
}

std::uint64_t Rng::NextU64() {
  const std::uint64_t result = Rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = Rotl(state_[3], 45);
  return result;
}

Real Rng::Uniform() {
  return static_cast<Real>(NextU64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  if (bound == 0) return 0;
  __uint128_t m = static_cast<__uint128_t>(NextU64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(NextU64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Real Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  Real u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const Real u2 = Uniform();
  const Real radius = std::sqrt(-2.0 * std::log(u1));
  const Real angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<std::size_t> Rng::Permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  Shuffle(p);
  return p;
}

Rng Rng::Fork(std::uint64_t stream) const {
  std::uint64_t key = state_[0] ^ Rotl(state_[2], 13) ^
                      (stream * 0xd1342543de82ef95ULL);
  return Rng(SplitMix64(key));
}

DenseMatrix RandomNormalMatrix(std::size_t rows, std::size_t cols, Rng& rng,
                               Real stddev) {
  DenseMatrix m(rows, cols);
  for (auto& v : m.data()) v = stddev * rng.Normal();
  return m;
}

DenseMatrix RandomUniformMatrix(std::size_t rows, std::size_t cols, Rng& rng,
                                Real lo, Real hi) {
  DenseMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.Uniform(lo, hi);
  return m;
}

DenseMatrix GlorotUniform(std::size_t rows, std::size_t cols, Rng& rng) {
  const Real limit = std::sqrt(6.0 / static_cast<Real>(rows + cols));
  return RandomUniformMatrix(rows, cols, rng, -limit, limit);
}

}  // namespace evinet::numerics
