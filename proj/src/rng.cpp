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

#include "shormagic/rng.hpp"

namespace shormagic {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t CounterRng::next() { return mix64(key_ + kGamma * ++counter_); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::below(std::uint64_t bound) {
    std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    while (true) {
        std::uint64_t x = next();
        if (x >= limit) {
            return x % bound;
        }
    }
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view name) {
    // FNV-1a over the name, then mixed with the parent key.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return mix64(mix64(parent) ^ h);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(mix64(parent) + kGamma * (index + 1));
}

}  // namespace shormagic
