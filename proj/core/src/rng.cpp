// Copyright 2026 The vne-sim Authors
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

#include "vne/rng.hpp"

#include <bit>
#include <cassert>
#include <cmath>

namespace vne {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : engine_(0) {
  std::uint64_t state = master_seed;
  std::uint64_t seed = 0;
  for (std::uint64_t i = 0; i <= stream_index; ++i) {
    seed = splitmix64_next(state);
  }
  engine_.seed(seed);
}

int RandomStream::uniform_int(int lo, int hi) {
  assert(lo <= hi);
  const std::uint64_t range =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t mask = std::bit_ceil(range) - 1;
  std::uint64_t v;
  do {
    v = next_u64() & mask;
  } while (v >= range);
  return lo + static_cast<int>(v);
}

int RandomStream::poisson(double mean) {
  assert(mean > 0.0);
  const double limit = std::exp(-mean);
  int count = -1;
  double product = 1.0;
  do {
    ++count;
    product *= next_unit();
  } while (product > limit);
  return count;
}

double RandomStream::exponential(double mean) {
  assert(mean > 0.0);
  return -mean * std::log(1.0 - next_unit());
}

}  // namespace vne
