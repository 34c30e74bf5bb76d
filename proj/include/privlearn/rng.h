// Copyright 2026 The privlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVLEARN_RNG_H_
#define PRIVLEARN_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace privlearn {

// Stream identifiers used when deriving sub-seeds. Changing the numeric values
// changes every simulation output, so append only.
enum class StreamKind : std::uint64_t {
  kGraph = 1,
  kQuality = 2,
  kPerturb = 3,
  kDisseminate = 4,
  kSample = 5,
  kAdopt = 6,
  kAgentQuality = 7,
  kSpectral = 8,
  kTest = 99,
};

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t Mix64(std::uint64_t x);

// Counter-based seed derivation: hashes `base` together with the path
// components so that (base, path) fully determines the result and distinct
// paths give statistically independent streams.
std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> path);

std::uint64_t DeriveSeed(std::uint64_t base, StreamKind kind,
                         std::initializer_list<std::uint64_t> path = {});

// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it can drive
// std::shuffle, but the helpers below are used for all protocol sampling to
// keep outputs independent of the standard library's distribution code.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return NextU64(); }

  std::uint64_t NextU64();

  // Uniform double in [0, 1) with 53 bits of precision.
  double NextUniform();

  // True with probability p; p <= 0 is never true and p >= 1 always is.
  bool Bernoulli(double p);

  // Uniform index in [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);

 private:
  std::uint64_t state_;
};

}  // namespace privlearn

#endif  // PRIVLEARN_RNG_H_
