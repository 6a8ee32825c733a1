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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>

#include "shormagic/dense_reference.hpp"
#include "shormagic/error.hpp"
#include "shormagic/simulator.hpp"

using namespace shormagic;

namespace {

// Textbook Shor distribution with a full t-bit QFT on the exponent register:
//   P(x) = 2^-2t sum_y |sum_{k < 2^t, a^k = y} exp(2 pi i x k / 2^t)|^2.
std::vector<double> textbook_distribution(u64 N, u64 a, unsigned t) {
    const u64 Q = u64{1} << t;
    std::vector<u64> power(Q);
    u64 y = 1;
    for (u64 k = 0; k < Q; k++) {
        power[k] = y;
        y = y * a % N;
    }
    std::vector<double> p(Q, 0);
    for (u64 x = 0; x < Q; x++) {
        std::map<u64, std::complex<double>> sums;
        for (u64 k = 0; k < Q; k++) {
            sums[power[k]] += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((x * k) % Q) / Q);
        }
        for (const auto &[key, s] : sums) p[x] += std::norm(s);
        p[x] /= static_cast<double>(Q) * static_cast<double>(Q);
    }
    return p;
}

// Walks every outcome branch of the orbit engine, calling leaf(outcomes,
// probability) for each branch of nonzero weight.
void enumerate_branches(const ShorInstance &inst,
                        const std::function<void(const std::vector<int> &, double)> &leaf) {
    std::vector<int> outcomes;
    std::function<void(const OrbitSimulator &, unsigned, double)> walk = [&](const OrbitSimulator &sim, unsigned tau,
                                                                             double weight) {
        if (tau > inst.t) {
            leaf(outcomes, weight);
            return;
        }
        for (int m : {0, 1}) {
            OrbitSimulator next = sim;
            OutcomeSampler forced = OutcomeSampler::forced({m});
            StepTrace trace;
            try {
                trace = next.step(tau, forced);
            } catch (const Error &) {
                continue;  // branch of vanishing probability
            }
            outcomes.push_back(m);
            walk(next, tau + 1, weight * trace.probability);
            outcomes.pop_back();
        }
    };
    walk(OrbitSimulator(inst), 1, 1.0);
}

u64 x_of(const std::vector<int> &outcomes) {
    u64 x = 0;
    for (std::size_t j = 0; j < outcomes.size(); j++) x |= static_cast<u64>(outcomes[j]) << j;
    return x;
}

bool is_odd_composite(u64 N) {
    if (N % 2 == 0 || N < 9) return false;
    for (u64 d = 3; d * d <= N; d += 2)
        if (N % d == 0) return true;
    return false;
}

}  // namespace

TEST(ShorInstance, DefaultsAndValidation) {
    const ShorInstance inst = ShorInstance::make(15, 7);
    EXPECT_EQ(inst.n, 4u);
    EXPECT_EQ(inst.L, 5u);
    EXPECT_EQ(inst.t, 9u);
    EXPECT_EQ(inst.period(), 4u);
    EXPECT_EQ(inst.qft_bit(), 16u);
    EXPECT_EQ(inst.step_multiplier(9), 7u);
    EXPECT_EQ(inst.step_multiplier(8), 4u);
    EXPECT_EQ(inst.step_multiplier(1), 1u);
    EXPECT_EQ(ShorInstance::make(18923, 2).t, 31u);
    EXPECT_EQ(ShorInstance::make(15, 7, 3).t, 3u);
    EXPECT_THROW(ShorInstance::make(15, 5), Error);
    EXPECT_THROW(ShorInstance::make(15, 1), Error);
    EXPECT_THROW(ShorInstance::make(15, 15), Error);
}

TEST(FeedbackPhase, HandValues) {
    const std::vector<int> none;
    EXPECT_EQ(feedback_phase(none, 1), 0.0);
    const std::vector<int> one = {1};
    EXPECT_NEAR(feedback_phase(one, 2), -std::numbers::pi / 2, 1e-15);
    const std::vector<int> two = {1, 1};
    EXPECT_NEAR(feedback_phase(two, 3), -3 * std::numbers::pi / 4, 1e-15);
    const std::vector<int> three = {1, 0, 1};
    EXPECT_NEAR(feedback_phase(three, 4), -std::numbers::pi * (1.0 / 8 + 1.0 / 2), 1e-15);
}

TEST(ControlledModmul, PermutesOnlyTheOneBranch) {
    const SparseState in = SparseState::from_entries(5, {{0b00001, 0.6}, {0b10001, 0.8}});
    const SparseState out = controlled_modmul(in, 7, 1, 15);
    EXPECT_EQ(out.support(), (std::vector<Bitstring>{0b00001, 0b10111}));
    EXPECT_THROW(controlled_modmul(SparseState::basis(5, 15), 7, 1, 15), Error);
}

TEST(OutcomeSampler, ForcedReplayAndVanishingBranch) {
    OutcomeSampler s = OutcomeSampler::forced({1, 0});
    EXPECT_TRUE(s.is_forced());
    EXPECT_EQ(s.draw(0.5), 1);
    EXPECT_EQ(s.draw(0.5), 0);
    EXPECT_THROW(s.draw(0.5), Error);
    OutcomeSampler z = OutcomeSampler::forced({1});
    EXPECT_THROW(z.draw(1.0), Error);
}

TEST(Run, TextbookOutcomeDistribution) {
    // The recycled-qubit circuit must reproduce the full-QFT distribution.
    for (auto [N, a] : std::vector<std::pair<u64, u64>>{{15, 7}, {15, 4}, {21, 2}, {21, 13}, {33, 5}}) {
        const ShorInstance inst = ShorInstance::make(N, a, 8);
        const std::vector<double> expect = textbook_distribution(N, a, inst.t);
        std::vector<double> got(expect.size(), 0);
        double total = 0;
        enumerate_branches(inst, [&](const std::vector<int> &m, double p) {
            got[x_of(m)] += p;
            total += p;
        });
        EXPECT_NEAR(total, 1, 1e-10);
        for (std::size_t x = 0; x < expect.size(); x++) ASSERT_NEAR(got[x], expect[x], 1e-10) << N << " " << a << " x=" << x;
    }
}

TEST(Run, FifteenSevenSucceedsWithProbabilityHalf) {
    // x = s/4 uniformly; s = 1, 3 recover r = 4, s = 0, 2 do not.
    const ShorInstance inst = ShorInstance::make(15, 7);
    double p_succ = 0;
    enumerate_branches(inst, [&](const std::vector<int> &m, double p) {
        if (make_record(inst, m, 0).success) p_succ += p;
    });
    EXPECT_NEAR(p_succ, 0.5, 1e-12);

    const int reps = 4000;
    int hits = 0;
    for (int s = 0; s < reps; s++) hits += run(inst, derive_seed(77, u64(s))).record.success;
    EXPECT_LE(std::abs(hits / double(reps) - 0.5), 3 * std::sqrt(0.25 / reps));
}

TEST(Run, SampledHistogramWithinThreeSigma) {
    const ShorInstance inst = ShorInstance::make(21, 2, 7);
    const std::vector<double> expect = textbook_distribution(21, 2, 7);
    const int reps = 20000;
    std::vector<int> counts(expect.size(), 0);
    for (int s = 0; s < reps; s++) counts[run(inst, derive_seed(5, u64(s))).record.x_num]++;
    for (std::size_t x = 0; x < expect.size(); x++) {
        const double sigma = std::sqrt(reps * expect[x] * (1 - expect[x]));
        // 3 sigma per bin, with a floor of one count for near-empty bins.
        EXPECT_LE(std::abs(counts[x] - reps * expect[x]), std::max(3 * sigma, 1.0)) << "x=" << x;
    }
}

TEST(Run, EnginesAgreeUpTo512) {
    // Orbit vs generic vs dense on every odd composite N <= 512, 20 seeds
    // each, with a seeded coprime per seed; compared step by step.
    for (u64 N = 9; N <= 512; N += 2) {
        if (!is_odd_composite(N)) continue;
        std::vector<u64> coprimes;
        for (u64 a = 2; a < N; a++)
            if (std::gcd(a, N) == 1) coprimes.push_back(a);
        for (u64 rep = 0; rep < 20; rep++) {
            const u64 seed = derive_seed(N, rep);
            const u64 a = coprimes[CounterRng(seed).below(coprimes.size())];
            const ShorInstance inst = ShorInstance::make(N, a);
            OutcomeSampler s1 = OutcomeSampler::seeded(seed), s2 = OutcomeSampler::seeded(seed),
                           s3 = OutcomeSampler::seeded(seed);
            OrbitSimulator orbit(inst);
            DenseSimulator dense(inst);
            SparseState generic = init_state(inst);
            std::vector<int> prior;
            for (unsigned tau = 1; tau <= inst.t; tau++) {
                const StepTrace x = orbit.step(tau, s1, true);
                const StepTrace y = step(generic, inst, tau, prior, s2, true);
                const StepTrace z = dense.step(tau, s3, true);
                ASSERT_EQ(x.outcome, y.outcome) << N << " " << a << " tau " << tau;
                ASSERT_EQ(x.outcome, z.outcome) << N << " " << a << " tau " << tau;
                ASSERT_NEAR(x.probability, y.probability, 1e-10);
                ASSERT_NEAR(x.probability, z.probability, 1e-10);
                ASSERT_EQ(x.support_size, y.support_size);
                ASSERT_LT(phase_insensitive_distance(*x.probe, *y.probe), 1e-10);
                ASSERT_LT(phase_insensitive_distance(*x.probe, *z.probe), 1e-10);
                ASSERT_LT(phase_insensitive_distance(orbit.state(), generic), 1e-10);
                ASSERT_LT(phase_insensitive_distance(dense.state(), generic), 1e-10);
                prior.push_back(x.outcome);
            }
        }
    }
}

TEST(Run, PlateauRelativePhaseSettlesOnZeroOrPi) {
    // In the plateau the QFT qubit approaches (|0> + e^{i phi}|1>)/sqrt2 with
    // phi = 0 or pi, making the measurement deterministic; the deviation at
    // least halves with every step past tau*.
    for (auto [N, a] : std::vector<std::pair<u64, u64>>{{3599, 7}, {2021, 2}, {18923, 15780}, {18923, 2}}) {
        const ShorInstance inst = ShorInstance::make(N, a);
        const auto &d = inst.decomposition;
        for (u64 seed = 0; seed < 5; seed++) {
            RunOptions options;
            options.snapshot_probes = true;
            for (const StepTrace &step : run(inst, seed, options).steps) {
                if (step.tau < d.tau_star + 4 || step.tau + d.k > inst.t) continue;
                Amplitude rho01 = 0;
                for (const auto &e : step.probe->entries())
                    if (!(e.key & inst.qft_bit())) rho01 += std::conj(step.probe->amplitude(e.key | inst.qft_bit())) * e.amp;
                const double bound = std::ldexp(1.0, -static_cast<int>(step.tau - d.tau_star - 3));
                EXPECT_LE(std::abs(std::abs(rho01) - 0.5), bound) << N << " " << a << " tau " << step.tau;
                EXPECT_LE(std::abs(rho01.imag()), bound);
                EXPECT_LE(1 - step.probability, bound);
            }
        }
    }
}

TEST(Run, StateStaysNormalizedWithQftQubitReset) {
    const ShorInstance inst = ShorInstance::make(91, 5);
    OrbitSimulator sim(inst);
    OutcomeSampler sampler = OutcomeSampler::seeded(3);
    for (unsigned tau = 1; tau <= inst.t; tau++) {
        sim.step(tau, sampler);
        const SparseState s = sim.state();
        EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
        for (Bitstring b : s.support()) ASSERT_EQ(b & inst.qft_bit(), 0u);
    }
}

TEST(Run, DeterministicAndReplayable) {
    const ShorInstance inst = ShorInstance::make(247, 5);
    const RunRecord a = run(inst, 42).record;
    const RunRecord b = run(inst, 42).record;
    EXPECT_EQ(a.outcomes, b.outcomes);
    EXPECT_EQ(a.x_num, b.x_num);
    RunOptions replay;
    replay.forced_outcomes = a.outcomes;
    replay.engine = Engine::generic;
    EXPECT_EQ(run(inst, 0, replay).record.x_num, a.x_num);
    int differing = 0;
    for (u64 s = 0; s < 20; s++) differing += run(inst, s).record.outcomes != a.outcomes;
    EXPECT_GT(differing, 10);
}

TEST(Run, TraceRecordsEveryStep) {
    const ShorInstance inst = ShorInstance::make(15, 7);
    RunOptions options;
    options.snapshot_probes = true;
    const RunResult result = run(inst, 1, options);
    ASSERT_EQ(result.steps.size(), 9u);
    for (unsigned i = 0; i < 9; i++) {
        EXPECT_EQ(result.steps[i].tau, i + 1);
        ASSERT_TRUE(result.steps[i].probe.has_value());
        EXPECT_EQ(result.steps[i].probe->support_size(), result.steps[i].support_size);
        EXPECT_GT(result.steps[i].probability, 0);
    }
    EXPECT_TRUE(run(inst, 1).steps.empty());
}

TEST(Run, RecordMatchesOutcomeBits) {
    const ShorInstance inst = ShorInstance::make(15, 7);
    const RunRecord rec = make_record(inst, {0, 0, 0, 0, 0, 0, 0, 1, 0}, 9);
    EXPECT_EQ(rec.x_num, 128u);
    EXPECT_DOUBLE_EQ(rec.x(), 0.25);
    EXPECT_TRUE(rec.success);
    EXPECT_EQ(rec.found_period, 4u);
    EXPECT_EQ(rec.seed, 9u);
    EXPECT_THROW(make_record(inst, {0, 1}, 0), Error);
}

TEST(DenseReference, RejectsWideInstances) {
    EXPECT_THROW(DenseSimulator(ShorInstance::make(18923, 2)), Error);
}
