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

#include "privlearn/rng.h"

namespace privlearn {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = Mix64(base + kGolden);
  for (std::uint64_t component : path) {
    h = Mix64(h ^ Mix64(component + kGolden));
  }
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t base, StreamKind kind,
                         std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = DeriveSeed(base, {static_cast<std::uint64_t>(kind)});
  for (std::uint64_t component : path) {
    h = Mix64(h ^ Mix64(component + kGolden));
  }
  return h;
}

std::uint64_t RngStream::NextU64() {
  state_ += kGolden;
  return Mix64(state_);
}

double RngStream::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

bool RngStream::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return NextUniform() < p;
}

std::size_t RngStream::UniformIndex(std::size_t n) {
  // Lemire's multiply-shift with rejection for an exactly uniform result.
  std::uint64_t range = n;
  unsigned __int128 m =
      static_cast<unsigned __int128>(NextU64()) * static_cast<unsigned __int128>(range);
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(NextU64()) *
          static_cast<unsigned __int128>(range);
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

}  // namespace privlearn
