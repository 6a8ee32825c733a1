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

#include <algorithm>
#include <bit>
#include <cmath>

#include "shormagic/error.hpp"
#include "shormagic/magic.hpp"

namespace shormagic {

namespace {

constexpr unsigned kDenseCounterMaxWidth = 22;

// Open-addressing table of XOR value -> pair count. Key 0 marks an empty
// slot: distinct strings never XOR to zero.
class XorCounter {
 public:
  explicit XorCounter(std::size_t expected) {
    std::size_t cap = std::bit_ceil(std::max<std::size_t>(16, 2 * expected));
    keys_.assign(cap, 0);
    counts_.assign(cap, 0);
    mask_ = cap - 1;
  }

  void add(Bitstring key) {
    std::size_t i = mix(key) & mask_;
    while (keys_[i] != 0 && keys_[i] != key) {
      i = (i + 1) & mask_;
    }
    keys_[i] = key;
    counts_[i]++;
  }

  u64 sum_pairs() const {
    u64 total = 0;
    for (u64 c : counts_) {
      total += c * (c - (c > 0));
    }
    return total;
  }

 private:
  static std::size_t mix(Bitstring x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }

  std::vector<Bitstring> keys_;
  std::vector<u64> counts_;
  std::size_t mask_ = 0;
};

}  // namespace

SupportSet SupportSet::make(unsigned width, std::vector<Bitstring> strings) {
    if (width > 63) {
        throw Error("magic", "support width must be <= 63");
    }
    std::sort(strings.begin(), strings.end());
    if (std::adjacent_find(strings.begin(), strings.end()) != strings.end()) {
        throw Error("magic", "support contains duplicate strings");
    }
    if (!strings.empty() && (strings.back() >> width) != 0) {
        throw Error("magic", "support string does not fit in the width");
    }
    return {width, std::move(strings)};
}

SupportSet SupportSet::of(const SparseState &state) { return make(state.num_qubits(), state.support()); }

u64 lambda_exact(const SupportSet &support) {
    const auto &s = support.strings;
    const std::size_t D = s.size();
    if (D < 4) {
        return 0;
    }
    u64 sum = 0;
    if (support.width <= kDenseCounterMaxWidth) {
        std::vector<std::uint32_t> counts(std::size_t{1} << support.width, 0);
        for (std::size_t i = 0; i < D; i++) {
            const Bitstring m = s[i];
            for (std::size_t j = i + 1; j < D; j++) {
                counts[m ^ s[j]]++;
            }
        }
        for (u64 c : counts) {
            sum += c * (c - (c > 0));
        }
    } else {
        const u64 pairs = static_cast<u64>(D) * (D - 1) / 2;
        XorCounter counter(pairs);
        for (std::size_t i = 0; i < D; i++) {
            for (std::size_t j = i + 1; j < D; j++) {
                counter.add(s[i] ^ s[j]);
            }
        }
        sum = counter.sum_pairs();
    }
    return 4 * sum;
}

double lambda_closed(u64 D, unsigned width) {
    if (D < 4) {
        return 0;
    }
    const double d = static_cast<double>(D);
    return d * (d - 1) * (d - 2) * (d - 3) / std::ldexp(1.0, static_cast<int>(width));
}

double m2_structured(u64 D, double lambda) {
    if (D == 0) {
        throw Error("magic", "support size must be positive");
    }
    if (lambda < 0) {
        throw Error("magic", "Lambda must be non-negative");
    }
    if (D <= 2) {
        return 0;
    }
    const double d = static_cast<double>(D);
    return 4 * std::log(d) - std::log(4 * lambda + 6 * d * d - 5 * d);
}

}  // namespace shormagic
