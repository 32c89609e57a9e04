// Copyright 2026 The Omnilink Authors
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

#ifndef OMNILINK_RNG_HPP_
#define OMNILINK_RNG_HPP_

#include <cmath>
#include <complex>
#include <cstdint>

namespace omnilink {

// Counter-based generator: every variate is a pure function of (seed, tags),
// so draws are reproducible regardless of evaluation order and immune to
// platform differences in <random> distributions.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

/// Uniform double in (0, 1], never exactly zero.
inline double uniform_unit(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

/// Uniform double in [0, 1).
inline double uniform_half_open(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Circularly symmetric complex normal with unit variance (E|z|^2 = 1),
/// derived deterministically from the hash state `h`.
inline std::complex<double> complex_normal(std::uint64_t h) {
  constexpr double two_pi = 6.28318530717958647692;
  const double u1 = uniform_unit(mix64(h));
  const double u2 = uniform_half_open(mix64(h ^ 0xd1b54a32d192ed03ULL));
  const double r = std::sqrt(-std::log(u1));
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

}  // namespace omnilink

#endif  // OMNILINK_RNG_HPP_
