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

#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <fmt/core.h>

#include "shormagic/dense_reference.hpp"
#include "shormagic/magic.hpp"
#include "shormagic/numtheory.hpp"
#include "shormagic/rng.hpp"
#include "shormagic/simulator.hpp"

namespace shormagic::cli {

namespace {

// Each check returns an empty string on success, otherwise a reason.
using Check = std::function<std::string()>;

std::string spectrum_matches_bruteforce() {
    for (u64 N : {15, 21, 33, 35, 39, 45, 55, 91, 105}) {
        const OrderSpectrum s = order_spectrum(N);
        for (const auto &[r, members] : s.members) {
            for (u64 a : members) {
                u64 y = a % N, d = 1;
                while (y != 1) {
                    y = y * a % N;
                    d++;
                }
                if (d != r) {
                    return fmt::format("N={} a={}: {} vs {}", N, a, r, d);
                }
            }
        }
    }
    return "";
}

std::string sparse_sre_matches_bruteforce() {
    for (u64 N : {15, 21, 33}) {
        const OrderSpectrum s = order_spectrum(N);
        for (u64 r : s.periods()) {
            const ShorInstance inst = ShorInstance::make(N, s.members.at(r).front());
            RunOptions options;
            options.snapshot_probes = true;
            for (u64 seed = 0; seed < 3; seed++) {
                for (const StepTrace &step : run(inst, seed, options).steps) {
                    const double fast = sre_sparse_exact(*step.probe);
                    const double slow = sre_bruteforce(*step.probe);
                    if (std::abs(fast - slow) > 1e-9) {
                        return fmt::format("N={} a={} tau={}: {} vs {}", N, inst.a, step.tau, fast, slow);
                    }
                }
            }
        }
    }
    return "";
}

std::string engines_agree() {
    for (u64 N : {15, 21, 33, 35}) {
        for (u64 a = 2; a < N; a++) {
            if (std::gcd(a, N) != 1) {
                continue;
            }
            const ShorInstance inst = ShorInstance::make(N, a);
            RunOptions orbit, generic;
            generic.engine = Engine::generic;
            for (u64 seed = 0; seed < 2; seed++) {
                const auto x = run(inst, seed, orbit).record.outcomes;
                const auto y = run(inst, seed, generic).record.outcomes;
                const auto z = dense_reference(inst, seed).record.outcomes;
                if (x != y || x != z) {
                    return fmt::format("N={} a={} seed={}", N, a, seed);
                }
            }
        }
    }
    return "";
}

std::string order_two_stays_stabilizer() {
    for (u64 N : {15, 21, 33, 55, 57}) {
        const ShorInstance inst = ShorInstance::make(N, N - 1);
        RunOptions options;
        options.snapshot_probes = true;
        for (const StepTrace &step : run(inst, 7, options).steps) {
            const double m2 = sre_sparse_exact(*step.probe);
            if (std::abs(m2) > 1e-10) {
                return fmt::format("N={} tau={}: M2={}", N, step.tau, m2);
            }
        }
    }
    return "";
}

std::string lambda_matches_quadruplets() {
    CounterRng rng(derive_seed(0, "selftest-lambda"));
    for (int trial = 0; trial < 20; trial++) {
        std::vector<Bitstring> strings;
        while (strings.size() < 12) {
            const Bitstring s = rng.below(64);
            if (std::find(strings.begin(), strings.end(), s) == strings.end()) {
                strings.push_back(s);
            }
        }
        u64 count = 0;
        for (auto p : strings)
            for (auto q : strings)
                for (auto u : strings)
                    for (auto v : strings)
                        if (p != q && p != u && p != v && q != u && q != v && u != v && (p ^ q ^ u ^ v) == 0) count++;
        const u64 fast = lambda_exact(SupportSet::make(6, strings));
        if (fast != count) {
            return fmt::format("trial {}: {} vs {}", trial, fast, count);
        }
    }
    return "";
}

std::string quarter_recovers_period_four() {
    // x = 1/4 with a = 7 mod 15 must give r = 4; x = 1/2 gives 2, which fails.
    if (!recover_period(64, 8, 7, 15, 4).success) {
        return "x = 1/4 failed";
    }
    if (recover_period(128, 8, 7, 15, 4).success) {
        return "x = 1/2 succeeded";
    }
    return "";
}

}  // namespace

int run_selftest(std::ostream &out) {
    const std::vector<std::pair<std::string, Check>> checks = {
        {"order spectrum vs brute-force orders", spectrum_matches_bruteforce},
        {"sparse SRE vs Pauli sum", sparse_sre_matches_bruteforce},
        {"orbit, generic and dense engines", engines_agree},
        {"order-2 runs stay stabilizer", order_two_stays_stabilizer},
        {"pair-count Lambda vs quadruplet count", lambda_matches_quadruplets},
        {"continued-fraction recovery", quarter_recovers_period_four},
    };
    int failures = 0;
    for (const auto &[name, check] : checks) {
        std::string reason;
        try {
            reason = check();
        } catch (const std::exception &e) {
            reason = std::string("threw: ") + e.what();
        }
        if (reason.empty()) {
            out << "PASS  " << name << "\n";
        } else {
            out << "FAIL  " << name << ": " << reason << "\n";
            failures++;
        }
    }
    return failures;
}

}  // namespace shormagic::cli
