// Copyright 2026 The qcert Authors
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

#ifndef QCERT_RNG_HPP
#define QCERT_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace qcert {

// Seedable stream-splitting contract: every consumer derives an independent
// substream from (seed, tag) or (seed, index), so adding a measurement
// setting or resample never perturbs draws elsewhere. mt19937_64 output is
// pinned by the standard; uniform and Poisson variates are generated from
// raw 64-bit words, so runs are bit-reproducible for a fixed seed.

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a64(const std::string& s);

/// Substream seed for a named consumer.
inline uint64_t substream_seed(uint64_t seed, const std::string& tag) {
  return splitmix64(splitmix64(seed) ^ fnv1a64(tag));
}
/// Substream seed for an indexed consumer (resample iterations, grid points).
inline uint64_t substream_seed(uint64_t seed, uint64_t index) {
  return splitmix64(splitmix64(seed) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Uniform double in [0, 1) from the top 53 bits of one engine word.
double uniform01(std::mt19937_64& rng);

/// Poisson variate. Multiplicative inversion below mean 12, PTRS transformed
/// rejection above; exact zero for mean <= 0.
int64_t poisson_sample(std::mt19937_64& rng, double mean);

}  // namespace qcert

#endif
