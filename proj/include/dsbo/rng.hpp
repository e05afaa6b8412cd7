// Copyright 2025 The dsbo authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace dsbo {

// Why every draw in this project is keyed rather than sequential: per-agent
// gradient evaluations may run in any order (or in parallel), so each one
// derives its stream from (master_seed, agent, outer, inner, role).  Same key,
// same stream; distinct keys, decorrelated streams.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Roles keep the structural streams apart: the same (agent, s, t) needs
// independent draws for the upper-level sample, the lower-level sample, the
// two inner loops, the warm start, and dataset generation.
enum class Role : std::uint64_t {
  kDeltaUpper = 1,  // xi_s  in the penalty-gradient step
  kDeltaLower = 2,  // psi_s in the penalty-gradient step (shared by both g terms)
  kInnerYUpper = 3,
  kInnerYLower = 4,
  kInnerZLower = 5,
  kWarmYUpper = 6,
  kWarmYLower = 7,
  kWarmZLower = 8,
  kDatagen = 9,
  kInstance = 10,
  kProbe = 11,
};

struct StreamKey {
  std::uint64_t agent = 0;
  std::uint64_t outer = 0;
  std::uint64_t inner = 0;
  Role role = Role::kProbe;
};

// xoshiro256++ with split-seed construction: the key tuple is folded through
// splitmix64 into the four state words.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, const StreamKey& key) {
    std::uint64_t s = master_seed;
    s = splitmix64_next(s) ^ key.agent;
    s = splitmix64_next(s) ^ key.outer;
    s = splitmix64_next(s) ^ key.inner;
    s = splitmix64_next(s) ^ static_cast<std::uint64_t>(key.role);
    for (auto& word : state_) word = splitmix64_next(s);
  }

  std::uint64_t next_u64() {
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

  // uniform on [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on {0, ..., bound-1}, Lemire's unbiased bounded draw
  std::uint64_t uniform_below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // standard normal via Box-Muller; the second value of each pair is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    has_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// The plan is just the master seed; streams are minted on demand.
struct RngPlan {
  std::uint64_t master_seed = 0;

  RngStream stream(const StreamKey& key) const { return {master_seed, key}; }
};

}  // namespace dsbo
