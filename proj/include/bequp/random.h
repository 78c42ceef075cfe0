// Copyright 2026 The BeQuP Authors
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

#ifndef BEQUP_RANDOM_H_
#define BEQUP_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace bequp {

/// Random engine used by every stochastic component. Callers own it; nothing
/// in the library keeps hidden RNG state.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// 64-bit FNV-1a hash of a string, used to fold names into seed keys.
std::uint64_t fnv1a64(std::string_view text);

/// Derives an independent child seed from a parent seed and a key component.
/// Chaining calls folds a whole tuple key into one seed:
///   child = mix64(parent ^ mix64(component + 0x9e3779b97f4a7c15)).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t component);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view component);

}  // namespace bequp

#endif  // BEQUP_RANDOM_H_
