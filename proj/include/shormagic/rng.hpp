// Copyright 2026 The shormagic Authors
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
#include <string_view>

namespace shormagic {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator: the i-th output is mix64(key + i * gamma), so
/// any draw is a pure function of (key, i) and streams never share state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key of the named sub-stream `name` below `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view name);
/// Key of the indexed sub-stream `index` below `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

}  // namespace shormagic
