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

#ifndef VNE_RNG_HPP
#define VNE_RNG_HPP

#include <cstdint>
#include <random>

namespace vne {

// Next state/output of the splitmix64 generator (Steele, Lea & Flood).
std::uint64_t splitmix64_next(std::uint64_t& state);

// One deterministic sub-stream of a master seed. Stream i draws from an
// mt19937_64 engine seeded with the (i+1)-th splitmix64 output of the master
// seed. mt19937_64 and every sampler below are fully specified here, so the
// same (seed, stream, call sequence) produces the same values on any
// platform; none of the implementation-defined <random> distributions are
// used.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], both inclusive, by masked rejection.
  int uniform_int(int lo, int hi);

  // Poisson sample by Knuth's product method; intended for small means.
  int poisson(double mean);

  // Exponential sample with the given mean.
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vne

#endif  // VNE_RNG_HPP
