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

#include <optional>
#include <string_view>
#include <vector>

#include "shormagic/numtheory.hpp"
#include "shormagic/simulator.hpp"
#include "shormagic/sparse_state.hpp"

namespace shormagic {

/// Sorted set of distinct bitstrings of a fixed width.
struct SupportSet {
  unsigned width = 0;
  std::vector<Bitstring> strings;

  /// Sorts and validates: throws on duplicates or strings >= 2^width.
  static SupportSet make(unsigned width, std::vector<Bitstring> strings);
  static SupportSet of(const SparseState &state);

  std::size_t size() const { return strings.size(); }
};

// ---------------------------------------------------------------------------
// Stabilizer Renyi entropy M2 = -log(sum_P <psi|P|psi>^4 / 2^L), in nats.
// ---------------------------------------------------------------------------

inline constexpr unsigned kBruteForceMaxQubits = 12;
inline constexpr std::size_t kDefaultDifferenceBound = 4096;

/// Sum over all 4^L Pauli strings P_{z,x} = i^{-z.x} Z^z X^x. Requires
/// L <= 12. Strings whose X part maps no support element into the support
/// have zero expectation and are skipped.
double sre_bruteforce(const SparseState &state);

/// Exact M2 from the support alone:
///   exp(-M2) = sum_{x in X} sum_{d in X} |G_x(d)|^2,
///   G_x(d)   = sum_m a*_m a_{m^x} a*_{m^d} a_{m^d^x},
/// with X the XOR difference set of the support. Throws when |X| exceeds
/// `max_differences`.
double sre_sparse_exact(const SparseState &state, std::size_t max_differences = kDefaultDifferenceBound);

// ---------------------------------------------------------------------------
// Structured-superposition model.
// ---------------------------------------------------------------------------

/// Number of ordered quadruplets of distinct strings with zero XOR, computed
/// as 4 * sum_x A(x)(A(x) - 1) where A(x) counts unordered pairs with XOR x.
u64 lambda_exact(const SupportSet &support);

/// Random-bitstring estimate D(D-1)(D-2)(D-3) / 2^width.
double lambda_closed(u64 D, unsigned width);

/// M2 = 4 log D - log(4 Lambda + 6 D^2 - 5 D); zero for D <= 2.
double m2_structured(u64 D, double lambda);

enum class Regime {
  ramp,               ///< tau <= tau*, D = 2^tau
  plateau_transient,  ///< tau* < tau < tau* + 4, model only qualitative
  plateau,            ///< register-only superposition of size r_odd
  late,               ///< tau > t - k, D = r / 2^(t - tau)
};

std::string_view to_string(Regime regime);

struct ScheduleEntry {
  u64 D = 0;
  unsigned width = 0;  ///< qubits the model counts: L - 1 on the plateau, else L
  Regime regime = Regime::ramp;

  bool register_only() const { return regime == Regime::plateau || regime == Regime::plateau_transient; }
};

/// Support size schedule for step tau in [1, t]. When t is so short that the
/// ramp and the late window overlap, the ramp branch wins (it is the exact
/// count there).
ScheduleEntry d_schedule(const PeriodDecomposition &period, unsigned t, unsigned tau, unsigned L);

/// Support the model assumes at step tau: the L-bit probe support on the
/// ramp and late windows, the n-bit orbit {a^(2^k j)} on the plateau.
SupportSet analytic_support(const ShorInstance &instance, unsigned tau);

enum class LambdaMode { exact, closed };

struct MagicPoint {
  unsigned tau = 0;
  ScheduleEntry schedule;
  double lambda = 0;
  double m2 = 0;
};

struct MagicCurve {
  ShorInstance instance;
  LambdaMode mode = LambdaMode::exact;
  std::vector<MagicPoint> points;
};

MagicPoint m2_analytic(const ShorInstance &instance, unsigned tau, LambdaMode mode);
MagicCurve m2_curve_analytic(const ShorInstance &instance, LambdaMode mode);

struct Asymptotes {
  double small_r = 0;     ///< log(r^3 / (6r - 5))
  double saturation = 0;  ///< (L - 2 - eps) log 2 - 3 * 2^(L - eps - 1) / r^2
};

Asymptotes m2_final_asymptotes(u64 r, unsigned L, int epsilon);

/// Uniform-magnitude state over `support` with i.i.d. uniform phases.
SparseState structured_state_sample(const SupportSet &support, u64 seed);

/// -log E_Haar[sum_P <P>^4 / 2^L] for L qubits.
double haar_average_m2(unsigned L);

}  // namespace shormagic
