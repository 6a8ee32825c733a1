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
#include <span>
#include <vector>

#include "shormagic/numtheory.hpp"
#include "shormagic/rng.hpp"
#include "shormagic/sparse_state.hpp"

namespace shormagic {

/// One order-finding problem: base a modulo N on an n-qubit register plus a
/// single recycled QFT qubit, run for t semiclassical steps.
struct ShorInstance {
  u64 N = 0;
  u64 a = 0;
  unsigned n = 0;  ///< register width, ceil(log2 N)
  unsigned t = 0;  ///< number of measured steps
  unsigned L = 0;  ///< n + 1
  PeriodDecomposition decomposition;

  /// Validates gcd(a, N) = 1 and 2 <= a < N, computes the order of a and
  /// defaults t to 2n + 1.
  static ShorInstance make(u64 N, u64 a, std::optional<unsigned> t = std::nullopt);

  u64 period() const { return decomposition.r; }
  Bitstring qft_bit() const { return Bitstring{1} << n; }
  /// a^(2^(t - tau)) mod N: the multiplier applied at step tau.
  u64 step_multiplier(unsigned tau) const;
};

/// Source of measurement outcomes: Born-rule sampling from a seeded
/// counter-based stream, or replay of a fixed bit list.
class OutcomeSampler {
 public:
  static OutcomeSampler seeded(u64 seed);
  static OutcomeSampler forced(std::vector<int> outcomes);

  /// Returns the outcome given P(outcome = 0) = p_zero. A forced outcome
  /// whose probability is below 1e-12 throws.
  int draw(double p_zero);
  bool is_forced() const { return !rng_.has_value(); }

 private:
  std::optional<CounterRng> rng_;
  std::vector<int> forced_;
  std::size_t next_ = 0;
};

struct StepTrace {
  unsigned tau = 0;
  int outcome = 0;
  double probability = 0;        ///< Born probability of the recorded outcome
  std::size_t support_size = 0;  ///< probe-state support
  std::optional<SparseState> probe;  ///< state just before the second Hadamard
};

struct RunRecord {
  std::vector<int> outcomes;  ///< m_1 .. m_t
  unsigned t = 0;
  u64 x_num = 0;  ///< sum_j 2^(j-1) m_j
  bool success = false;
  std::optional<u64> found_period;
  u64 seed = 0;

  double x() const { return static_cast<double>(x_num) / static_cast<double>(u64{1} << t); }
};

enum class Engine {
  orbit,    ///< amplitudes indexed by position in the orbit of 1 (default)
  generic,  ///< bitstring-keyed SparseState gates
};

struct RunOptions {
  Engine engine = Engine::orbit;
  bool record_steps = false;
  bool snapshot_probes = false;  ///< implies record_steps
  std::optional<std::vector<int>> forced_outcomes;
};

struct RunResult {
  RunRecord record;
  std::vector<StepTrace> steps;
};

/// |0>_qft |1>_register.
SparseState init_state(const ShorInstance &instance);

/// Multiplies the register by a^e mod N on the QFT-qubit-1 branch. The QFT
/// qubit is the top qubit of `state`; register values must be < N.
SparseState controlled_modmul(const SparseState &state, u64 a, u64 e, u64 N);

/// phi_tau = -pi * sum_{j < tau} m_j 2^-(tau - j).
double feedback_phase(std::span<const int> prior_outcomes, unsigned tau);

/// One semiclassical step on a bitstring-keyed state: H, controlled
/// multiplication, feedback phase, probe, H, measurement, reset of the QFT
/// qubit. `state` is replaced by the normalized post-measurement state.
StepTrace step(SparseState &state, const ShorInstance &instance, unsigned tau,
               std::span<const int> prior_outcomes, OutcomeSampler &sampler, bool snapshot = false);

/// Step engine over the orbit {a^j mod N : 0 <= j < r}. Controlled
/// multiplication by a^e becomes a cyclic shift by e mod r, so one step is
/// O(r) with no hashing.
class OrbitSimulator {
 public:
  explicit OrbitSimulator(const ShorInstance &instance);

  void reset();
  StepTrace step(unsigned tau, OutcomeSampler &sampler, bool snapshot = false);
  /// Current post-measurement state as bitstrings.
  SparseState state() const;
  std::span<const int> outcomes() const { return outcomes_; }

 private:
  SparseState probe_state() const;

  ShorInstance instance_;
  std::vector<u64> orbit_;  // orbit_[j] = a^j mod N
  std::vector<Amplitude> zero_;
  std::vector<Amplitude> one_;
  std::vector<Amplitude> scratch_;
  std::vector<int> outcomes_;
};

/// Assembles x and the continued-fraction verdict from a full outcome list.
RunRecord make_record(const ShorInstance &instance, std::vector<int> outcomes, u64 seed);

/// Executes all t steps. Identical (instance, seed, options) give identical
/// records on either engine.
RunResult run(const ShorInstance &instance, u64 seed, const RunOptions &options = {});

}  // namespace shormagic
