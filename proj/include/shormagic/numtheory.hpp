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
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace shormagic {

using u64 = std::uint64_t;

/// (a * b) mod m with a 128-bit intermediate product.
u64 mul_mod(u64 a, u64 b, u64 m);

/// base^exp mod m, m >= 1. Returns 0 when m == 1.
u64 mod_pow(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

struct PrimePower {
  u64 prime;
  unsigned exponent;

  bool operator==(const PrimePower &) const = default;
};

/// Prime factorization sorted by prime. Pollard-Brent rho for the large
/// cofactors, trial division for small primes. factorize(1) is empty.
std::vector<PrimePower> factorize(u64 n);

/// Carmichael function lambda(n): exponent of the multiplicative group mod n.
u64 carmichael(u64 n);

/// Number of bits needed to hold values in [0, N): ceil(log2 N).
unsigned register_width(u64 N);

/// ceil(log2 x) for x >= 1.
unsigned ceil_log2(u64 x);

/// Computes orders modulo a fixed N by descending through the prime factors
/// of lambda(N). Construction factors lambda(N) once.
class OrderFinder {
 public:
  explicit OrderFinder(u64 N);

  u64 modulus() const { return N_; }
  u64 lambda() const { return lambda_; }

  /// Smallest r > 0 with a^r = 1 mod N. Throws Error("numtheory") when
  /// gcd(a, N) != 1.
  u64 order(u64 a) const;

 private:
  u64 N_;
  u64 lambda_;
  std::vector<PrimePower> lambda_factors_;
};

/// Convenience wrapper around OrderFinder for one-off queries.
u64 multiplicative_order(u64 a, u64 N);

/// r = 2^k * r_odd with tau_star = ceil(log2 r_odd) and epsilon = 1 iff r odd.
struct PeriodDecomposition {
  u64 r = 1;
  unsigned k = 0;
  u64 r_odd = 1;
  unsigned tau_star = 0;
  int epsilon = 1;

  bool operator==(const PeriodDecomposition &) const = default;
};

PeriodDecomposition split_period(u64 r);

struct Rational {
  u64 num = 0;
  u64 den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational &) const = default;
};

/// Occurrence frequencies g(r) of multiplicative orders over the coprimes
/// a in [2, N-1] of N.
struct OrderSpectrum {
  u64 N = 0;
  u64 total_coprimes = 0;
  /// Coprimes grouped by their order, each list ascending.
  std::map<u64, std::vector<u64>> members;

  std::vector<u64> periods() const;
  u64 count(u64 r) const;
  /// Exact g(r) in lowest terms; zero when r does not occur.
  Rational g(u64 r) const;
  double frequency(u64 r) const { return g(r).value(); }
};

inline constexpr u64 kDefaultSpectrumBound = 1'000'000;

/// Exact enumeration of orders for odd composite N <= bound.
OrderSpectrum order_spectrum(u64 N, u64 bound = kDefaultSpectrumBound);

struct Convergent {
  u64 num;
  u64 den;

  bool operator==(const Convergent &) const = default;
};

/// x = 1/(a_1 + 1/(a_2 + ...)) for x in [0, 1).
struct ContinuedFraction {
  std::vector<u64> coefficients;
  std::vector<Convergent> convergents;
};

/// Euclidean expansion of num/den, 0 <= num < den. num == 0 gives an empty
/// expansion.
ContinuedFraction continued_fraction_expand(u64 num, u64 den);

struct PeriodRecovery {
  bool success = false;
  /// First convergent denominator d <= N with a^d = 1 mod N, if any.
  std::optional<u64> found;
};

/// Textbook post-processing of a t-bit measurement x = x_num / 2^t. Success
/// requires the first valid denominator to be exactly true_r; a multiple or
/// a never-reached r counts as failure.
PeriodRecovery recover_period(u64 x_num, unsigned t, u64 a, u64 N, u64 true_r);

}  // namespace shormagic
