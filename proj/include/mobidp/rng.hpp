//
// Copyright 2026 The mobidp Authors
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
//

#ifndef MOBIDP_RNG_HPP_
#define MOBIDP_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace mobidp {

// Seeded random source. All pipeline randomness flows from one root seed
// through derive_seed(root, scope-key), so sharding work across threads
// cannot change outputs. mt19937_64 output is fully specified by the
// standard; uniforms are built from raw bits rather than
// std::uniform_real_distribution, which is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit hash (FNV-1a) of a scope key. Used to derive per-scope
// seeds; stable across platforms and reorderings.
std::uint64_t stable_hash(std::string_view key);

// Derives an independent seed for a named scope from the root seed.
std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view scope_key);

}  // namespace mobidp

#endif  // MOBIDP_RNG_HPP_
