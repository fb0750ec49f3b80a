// Copyright 2026 The shadowfit authors
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

#pragma once

#include <cstdint>
#include <random>

namespace shadowfit {

/// SplitMix64 finalizer; a cheap, well-distributed 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministically derive an independent stream key from a run seed and
/// two lane indices (e.g. replicate and pixel). Distinct inputs map to
/// decorrelated keys, so streams can be consumed in any order - in
/// particular from worker threads - without changing any draw.
inline std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t a,
                                       std::uint64_t b) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
  h = mix64(h ^ (a + 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (b + 0x9e3779b97f4a7c15ull));
  return h;
}

/// A seeded 64-bit Mersenne Twister on the derived stream key.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0) {
  return std::mt19937_64(derive_stream_key(seed, a, b));
}

}  // namespace shadowfit
