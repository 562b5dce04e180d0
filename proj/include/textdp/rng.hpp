// Copyright 2026 The textdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEXTDP_RNG_HPP_
#define TEXTDP_RNG_HPP_

#include <cstdint>
#include <random>

namespace textdp {

// All randomness flows through an explicitly seeded engine that callers own.
// There is no global RNG anywhere in the library, so every stochastic result
// is reproducible from its seed.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Per-document seed derivation for corpus runs: document i gets
// base_seed + i (mod 2^64), which keeps documents independent while the
// whole corpus stays reproducible from one number.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return base_seed + index;
}

}  // namespace textdp

#endif  // TEXTDP_RNG_HPP_
