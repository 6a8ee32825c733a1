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
#include <vector>

#include "shormagic/csv.hpp"
#include "shormagic/magic.hpp"
#include "shormagic/numtheory.hpp"
#include "shormagic/simulator.hpp"

namespace shormagic {

/// Up to `count` coprimes of order r, drawn uniformly without replacement
/// from a seeded stream and returned in ascending order. Throws when no
/// coprime has order r.
std::vector<u64> select_coprimes(const OrderSpectrum &spectrum, u64 r, std::size_t count, u64 seed);

/// One coprime per distinct period of N, chosen with select_coprimes.
std::vector<u64> one_coprime_per_period(const OrderSpectrum &spectrum, u64 seed);

// --------------------------------------------------------------------------
// Success probability
// --------------------------------------------------------------------------

struct SuccessEstimate {
  u64 successes = 0;
  u64 trials = 0;
  double p = 0;
  double ci_low = 0;   ///< Wilson 95%; 0 when no successes
  double ci_high = 0;  ///< Wilson 95%; one-sided 95% bound when no successes
};

/// Wilson score interval, with the exact one-sided bound 1 - 0.05^(1/n) for
/// zero successes.
SuccessEstimate binomial_estimate(u64 successes, u64 trials);

/// Runs `reps` seeded executions of `instance` with its t replaced by `t`.
/// Run i uses seed derive_seed(seed, i), so the result does not depend on
/// the thread count.
SuccessEstimate estimate_p_succ(const ShorInstance &instance, unsigned t, unsigned reps, u64 seed,
                                unsigned threads = 0);

// --------------------------------------------------------------------------
// Magic versus step
// --------------------------------------------------------------------------

struct MagicVsTauConfig {
  u64 N = 0;
  std::vector<u64> coprimes;
  std::optional<unsigned> t;
  unsigned reps = 150;
  u64 seed = 0;
  bool simulate = true;  ///< average exact SRE of simulated probes when L <= 12
  unsigned threads = 0;
};

struct MagicVsTauRow {
  u64 r = 0;
  u64 a = 0;
  unsigned tau = 0;
  u64 D = 0;
  double m2_exact_lambda = 0;
  double m2_closed_lambda = 0;
  std::optional<double> m2_simulated;
  Regime regime = Regime::ramp;
};

std::vector<MagicVsTauRow> exp_magic_vs_tau(const MagicVsTauConfig &config);
Table to_table(const std::vector<MagicVsTauRow> &rows);

// --------------------------------------------------------------------------
// Final magic versus period
// --------------------------------------------------------------------------

struct MagicVsRConfig {
  u64 N = 0;
  unsigned samples_per_r = 10;
  u64 seed = 0;
  std::optional<unsigned> t;
  unsigned threads = 0;
};

struct MagicVsRRow {
  u64 r = 0;
  u64 a = 0;
  unsigned L = 0;
  double m2_final_exact_lambda = 0;
  double m2_final_closed_lambda = 0;
  double small_r = 0;
  double saturation = 0;
};

std::vector<MagicVsRRow> exp_magic_vs_r(const MagicVsRConfig &config);
Table to_table(const std::vector<MagicVsRRow> &rows);

// --------------------------------------------------------------------------
// Conditional success rate S = g * p_succ
// --------------------------------------------------------------------------

struct SuccessRateConfig {
  std::vector<u64> moduli;
  unsigned reps_per_a = 100;
  unsigned coprimes_per_r = 100;
  u64 seed = 0;
  unsigned threads = 0;
};

struct SuccessStats {
  u64 N = 0;
  unsigned L = 0;
  u64 r = 0;
  u64 a = 0;  ///< smallest coprime used
  std::size_t coprimes = 0;
  Rational g;
  SuccessEstimate p;
  double S = 0;
  double S_norm = 0;
  double m2_final = 0;  ///< analytic, exact Lambda, averaged over the coprimes
  double m2_ratio = 0;  ///< m2_final / (L log 2)
};

std::vector<SuccessStats> exp_success_rate(const SuccessRateConfig &config);
Table to_table(const std::vector<SuccessStats> &rows);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
};

/// Least-squares slope of log S_norm against log(r/N), pooled over moduli,
/// using rows with S_norm > s_floor and r/N within `decades` decades of the
/// largest r/N of their modulus.
SlopeFit success_slope(const std::vector<SuccessStats> &rows, double s_floor = 1e-3, double decades = 1.0);

// --------------------------------------------------------------------------
// Plateau length versus success-decay interval
// --------------------------------------------------------------------------

struct PlateauConfig {
  u64 N = 0;
  std::vector<u64> coprimes;
  unsigned t_min = 2;
  std::optional<unsigned> t_max;  ///< defaults to 2n + 1
  unsigned reps = 2000;
  u64 seed = 0;
  unsigned threads = 0;
};

struct PlateauSweepRow {
  u64 a = 0;
  u64 r = 0;
  unsigned t = 0;
  SuccessEstimate p;
};

struct PlateauPair {
  u64 a = 0;
  u64 r = 0;
  unsigned t_max = 0;
  int delta_tau_m2 = 0;     ///< t_max - ceil(log2 r)
  int delta_tau_psucc = 0;  ///< t_max - (largest t with zero successes)
  std::optional<unsigned> zero_t;  ///< empty when p > 0 down to t_min (censored)
};

struct PlateauResult {
  std::vector<PlateauPair> pairs;
  std::vector<PlateauSweepRow> sweep;
};

/// Analytic plateau length, independent of any simulation.
int plateau_length_m2(unsigned t_max, u64 r);

PlateauResult exp_plateau(const PlateauConfig &config);
Table to_table(const std::vector<PlateauPair> &rows);
Table to_table(const std::vector<PlateauSweepRow> &rows);

/// Pearson correlation of two equally long samples.
double pearson(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace shormagic
