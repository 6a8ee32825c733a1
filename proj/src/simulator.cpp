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

#include "shormagic/simulator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "shormagic/error.hpp"

namespace shormagic {

namespace {

[[noreturn]] void fail(const std::string &message) { throw Error("simulator", message); }

constexpr double kNormTolerance = 1e-10;

void check_step_index(const ShorInstance &instance, unsigned tau) {
    if (tau < 1 || tau > instance.t) {
        fail("step index " + std::to_string(tau) + " outside [1, " + std::to_string(instance.t) + "]");
    }
}

void check_total_norm(double total) {
    if (std::abs(total - 1.0) > kNormTolerance) {
        fail("norm drifted to " + std::to_string(total) + " before measurement");
    }
}

}  // namespace

ShorInstance ShorInstance::make(u64 N, u64 a, std::optional<unsigned> t) {
    if (N < 3) {
        fail("modulus must be >= 3");
    }
    if (a < 2 || a >= N) {
        fail("base must satisfy 2 <= a < N");
    }
    if (std::gcd(a, N) != 1) {
        fail("gcd(a, N) != 1");
    }
    ShorInstance inst;
    inst.N = N;
    inst.a = a;
    inst.n = register_width(N);
    inst.L = inst.n + 1;
    inst.t = t.value_or(2 * inst.n + 1);
    if (inst.L > 63) {
        fail("register too wide for 64-bit keys");
    }
    if (inst.t < 1 || inst.t > 63) {
        fail("step count t must be in [1, 63]");
    }
    inst.decomposition = split_period(multiplicative_order(a, N));
    return inst;
}

u64 ShorInstance::step_multiplier(unsigned tau) const {
    u64 m = a % N;
    for (unsigned i = tau; i < t; i++) {
        m = mul_mod(m, m, N);
    }
    return m;
}

OutcomeSampler OutcomeSampler::seeded(u64 seed) {
    OutcomeSampler s;
    s.rng_.emplace(seed);
    return s;
}

OutcomeSampler OutcomeSampler::forced(std::vector<int> outcomes) {
    OutcomeSampler s;
    s.forced_ = std::move(outcomes);
    return s;
}

int OutcomeSampler::draw(double p_zero) {
    if (rng_) {
        return rng_->uniform() < p_zero ? 0 : 1;
    }
    if (next_ >= forced_.size()) {
        fail("forced outcome list exhausted");
    }
    int m = forced_[next_++];
    double p = m == 0 ? p_zero : 1.0 - p_zero;
    if (p < 1e-12) {
        fail("forced outcome " + std::to_string(m) + " has vanishing probability");
    }
    return m;
}

SparseState init_state(const ShorInstance &instance) { return SparseState::basis(instance.L, 1); }

SparseState controlled_modmul(const SparseState &state, u64 a, u64 e, u64 N) {
    if (state.num_qubits() < 2) {
        fail("controlled multiplication needs a QFT qubit and a register");
    }
    const unsigned n = state.num_qubits() - 1;
    const Bitstring qft = Bitstring{1} << n;
    const u64 multiplier = mod_pow(a, e, N);
    std::vector<SparseState::Entry> out;
    out.reserve(state.support_size());
    for (const auto &entry : state.entries()) {
        u64 y = entry.key & (qft - 1);
        if (y >= N) {
            fail("register value " + std::to_string(y) + " >= N; corrupt state");
        }
        if (entry.key & qft) {
            out.push_back({qft | mul_mod(multiplier, y, N), entry.amp});
        } else {
            out.push_back(entry);
        }
    }
    return SparseState::from_entries(state.num_qubits(), std::move(out));
}

double feedback_phase(std::span<const int> prior_outcomes, unsigned tau) {
    double phase = 0;
    for (unsigned j = 1; j < tau && j <= prior_outcomes.size(); j++) {
        if (prior_outcomes[j - 1]) {
            phase += std::ldexp(1.0, -static_cast<int>(tau - j));
        }
    }
    return -std::numbers::pi * phase;
}

StepTrace step(SparseState &state, const ShorInstance &instance, unsigned tau,
               std::span<const int> prior_outcomes, OutcomeSampler &sampler, bool snapshot) {
    check_step_index(instance, tau);
    const Bitstring qft = instance.qft_bit();
    for (const auto &e : state.entries()) {
        if (e.key & qft) {
            fail("QFT qubit must be reset to |0> before a step");
        }
    }

    SparseState s = apply_hadamard(state, instance.n);
    s = controlled_modmul(s, instance.step_multiplier(tau), 1, instance.N);
    s = apply_phase(s, instance.n, feedback_phase(prior_outcomes, tau));

    StepTrace trace;
    trace.tau = tau;
    trace.support_size = s.support_size();
    if (snapshot) {
        trace.probe = s;
    }

    s = apply_hadamard(s, instance.n);
    double p_zero = 0, p_one = 0;
    for (const auto &e : s.entries()) {
        (e.key & qft ? p_one : p_zero) += std::norm(e.amp);
    }
    check_total_norm(p_zero + p_one);
    trace.outcome = sampler.draw(p_zero / (p_zero + p_one));
    trace.probability = (trace.outcome ? p_one : p_zero) / (p_zero + p_one);

    std::vector<SparseState::Entry> kept;
    for (const auto &e : s.entries()) {
        if (static_cast<bool>(e.key & qft) == static_cast<bool>(trace.outcome)) {
            kept.push_back({e.key & ~qft, e.amp});
        }
    }
    if (trace.probability < 1e-300) {
        fail("projection onto outcome with zero probability");
    }
    state = SparseState::from_entries(instance.L, std::move(kept));
    state.scale(1.0 / std::sqrt(trace.outcome ? p_one : p_zero));
    state.prune();
    return trace;
}

OrbitSimulator::OrbitSimulator(const ShorInstance &instance) : instance_(instance) {
    const u64 r = instance_.period();
    orbit_.resize(r);
    orbit_[0] = 1;
    for (u64 j = 1; j < r; j++) {
        orbit_[j] = mul_mod(orbit_[j - 1], instance_.a, instance_.N);
    }
    reset();
}

void OrbitSimulator::reset() {
    const u64 r = instance_.period();
    zero_.assign(r, Amplitude{});
    one_.assign(r, Amplitude{});
    scratch_.assign(r, Amplitude{});
    zero_[0] = 1.0;
    outcomes_.clear();
}

StepTrace OrbitSimulator::step(unsigned tau, OutcomeSampler &sampler, bool snapshot) {
    check_step_index(instance_, tau);
    if (tau != outcomes_.size() + 1) {
        fail("orbit engine steps must be applied in order");
    }
    const u64 r = instance_.period();
    const double h = M_SQRT1_2;
    const u64 shift = mod_pow(2, instance_.t - tau, r);
    const Amplitude branch = h * std::polar(1.0, feedback_phase(outcomes_, tau));

    // H on the QFT qubit, then the controlled shift j -> j + shift on the
    // |1> branch together with its feedback phase.
    for (u64 j = 0; j + shift < r; j++) {
        one_[j + shift] = branch * zero_[j];
    }
    for (u64 j = r - shift; j < r && shift > 0; j++) {
        one_[j + shift - r] = branch * zero_[j];
    }
    std::size_t support = 0;
    for (u64 j = 0; j < r; j++) {
        zero_[j] *= h;
        support += (zero_[j] != Amplitude{}) + (one_[j] != Amplitude{});
    }

    StepTrace trace;
    trace.tau = tau;
    trace.support_size = support;
    if (snapshot) {
        trace.probe = probe_state();
    }

    double p_zero = 0, p_one = 0;
    for (u64 j = 0; j < r; j++) {
        p_zero += std::norm(zero_[j] + one_[j]);
        p_one += std::norm(zero_[j] - one_[j]);
    }
    p_zero *= 0.5;
    p_one *= 0.5;
    check_total_norm(p_zero + p_one);
    trace.outcome = sampler.draw(p_zero / (p_zero + p_one));
    const double p = trace.outcome ? p_one : p_zero;
    trace.probability = p / (p_zero + p_one);
    if (trace.probability < 1e-300) {
        fail("projection onto outcome with zero probability");
    }

    const double sign = trace.outcome ? -1.0 : 1.0;
    const double norm = h / std::sqrt(p);
    for (u64 j = 0; j < r; j++) {
        Amplitude v = norm * (zero_[j] + sign * one_[j]);
        zero_[j] = std::abs(v) < kPruneTolerance ? Amplitude{} : v;
        one_[j] = Amplitude{};
    }
    outcomes_.push_back(trace.outcome);
    return trace;
}

SparseState OrbitSimulator::probe_state() const {
    const Bitstring qft = instance_.qft_bit();
    std::vector<SparseState::Entry> entries;
    for (std::size_t j = 0; j < orbit_.size(); j++) {
        if (zero_[j] != Amplitude{}) {
            entries.push_back({orbit_[j], zero_[j]});
        }
        if (one_[j] != Amplitude{}) {
            entries.push_back({qft | orbit_[j], one_[j]});
        }
    }
    return SparseState::from_entries(instance_.L, std::move(entries));
}

SparseState OrbitSimulator::state() const {
    std::vector<SparseState::Entry> entries;
    for (std::size_t j = 0; j < orbit_.size(); j++) {
        if (zero_[j] != Amplitude{}) {
            entries.push_back({orbit_[j], zero_[j]});
        }
    }
    return SparseState::from_entries(instance_.L, std::move(entries));
}

RunRecord make_record(const ShorInstance &instance, std::vector<int> outcomes, u64 seed) {
    if (outcomes.size() != instance.t) {
        fail("outcome list length differs from t");
    }
    RunRecord record;
    record.t = instance.t;
    record.seed = seed;
    for (unsigned j = 0; j < outcomes.size(); j++) {
        if (outcomes[j]) {
            record.x_num |= u64{1} << j;
        }
    }
    record.outcomes = std::move(outcomes);
    auto recovery = recover_period(record.x_num, instance.t, instance.a, instance.N, instance.period());
    record.success = recovery.success;
    record.found_period = recovery.found;
    return record;
}

RunResult run(const ShorInstance &instance, u64 seed, const RunOptions &options) {
    OutcomeSampler sampler = options.forced_outcomes ? OutcomeSampler::forced(*options.forced_outcomes)
                                                     : OutcomeSampler::seeded(seed);
    const bool keep = options.record_steps || options.snapshot_probes;
    RunResult result;
    std::vector<int> outcomes;
    outcomes.reserve(instance.t);

    if (options.engine == Engine::orbit) {
        OrbitSimulator sim(instance);
        for (unsigned tau = 1; tau <= instance.t; tau++) {
            StepTrace trace = sim.step(tau, sampler, options.snapshot_probes);
            outcomes.push_back(trace.outcome);
            if (keep) {
                result.steps.push_back(std::move(trace));
            }
        }
    } else {
        SparseState state = init_state(instance);
        for (unsigned tau = 1; tau <= instance.t; tau++) {
            StepTrace trace = step(state, instance, tau, outcomes, sampler, options.snapshot_probes);
            outcomes.push_back(trace.outcome);
            if (keep) {
                result.steps.push_back(std::move(trace));
            }
        }
    }
    result.record = make_record(instance, std::move(outcomes), seed);
    return result;
}

}  // namespace shormagic
