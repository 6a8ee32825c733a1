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
#include <cmath>
#include <numbers>
#include <numeric>

#include "shormagic/error.hpp"
#include "shormagic/magic.hpp"
#include "shormagic/rng.hpp"

namespace shormagic {

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::ramp:
            return "ramp";
        case Regime::plateau_transient:
            return "plateau-transient";
        case Regime::plateau:
            return "plateau";
        case Regime::late:
            return "late";
    }
    return "unknown";
}

ScheduleEntry d_schedule(const PeriodDecomposition &period, unsigned t, unsigned tau, unsigned L) {
    if (tau < 1 || tau > t) {
        throw Error("magic", "step index " + std::to_string(tau) + " outside [1, " + std::to_string(t) + "]");
    }
    if (L < 2) {
        throw Error("magic", "need at least one register qubit");
    }
    ScheduleEntry e;
    if (tau <= period.tau_star) {
        e.regime = Regime::ramp;
        e.D = u64{1} << tau;
        e.width = L;
    } else if (tau + period.k > t) {
        e.regime = Regime::late;
        // r / 2^(t - tau), capped by 2^tau when t is shorter than the ramp.
        e.D = std::min<u64>(period.r >> (t - tau), tau >= 63 ? ~u64{0} : u64{1} << tau);
        e.width = L;
    } else {
        e.regime = tau < period.tau_star + 4 ? Regime::plateau_transient : Regime::plateau;
        e.D = period.r_odd;
        e.width = L - 1;
    }
    return e;
}

SupportSet analytic_support(const ShorInstance &instance, unsigned tau) {
    const auto &period = instance.decomposition;
    const ScheduleEntry e = d_schedule(period, instance.t, tau, instance.L);
    const u64 N = instance.N;
    std::vector<Bitstring> strings;

    if (e.register_only()) {
        const u64 generator = mod_pow(instance.a, u64{1} << period.k, N);
        u64 y = 1;
        for (u64 j = 0; j < period.r_odd; j++) {
            strings.push_back(y);
            y = mul_mod(y, generator, N);
        }
        return SupportSet::make(instance.n, std::move(strings));
    }

    // Register support entering step tau: a^(c * 2^(t - tau + 1)) for
    // c < 2^(tau - 1); the QFT-1 branch is that set times a^(2^(t - tau)).
    const u64 r = period.r;
    const u64 stride = mod_pow(2, instance.t - tau + 1, r);
    const u64 cycle = r / std::gcd(stride, r);
    const u64 count = tau - 1 >= 63 ? cycle : std::min<u64>(cycle, u64{1} << (tau - 1));
    const u64 base = mod_pow(instance.a, stride, N);
    const u64 multiplier = instance.step_multiplier(tau);
    const Bitstring qft = instance.qft_bit();
    u64 y = 1;
    for (u64 c = 0; c < count; c++) {
        strings.push_back(y);
        strings.push_back(qft | mul_mod(y, multiplier, N));
        y = mul_mod(y, base, N);
    }
    return SupportSet::make(instance.L, std::move(strings));
}

MagicPoint m2_analytic(const ShorInstance &instance, unsigned tau, LambdaMode mode) {
    MagicPoint p;
    p.tau = tau;
    p.schedule = d_schedule(instance.decomposition, instance.t, tau, instance.L);
    if (mode == LambdaMode::exact) {
        SupportSet support = analytic_support(instance, tau);
        if (support.size() != p.schedule.D) {
            throw Error("magic", "materialized support size " + std::to_string(support.size()) +
                                     " disagrees with the schedule D = " + std::to_string(p.schedule.D));
        }
        p.lambda = static_cast<double>(lambda_exact(support));
    } else {
        p.lambda = lambda_closed(p.schedule.D, p.schedule.width);
    }
    p.m2 = m2_structured(p.schedule.D, p.lambda);
    return p;
}

MagicCurve m2_curve_analytic(const ShorInstance &instance, LambdaMode mode) {
    MagicCurve curve{instance, mode, {}};
    curve.points.reserve(instance.t);
    for (unsigned tau = 1; tau <= instance.t; tau++) {
        curve.points.push_back(m2_analytic(instance, tau, mode));
    }
    return curve;
}

Asymptotes m2_final_asymptotes(u64 r, unsigned L, int epsilon) {
    if (r == 0) {
        throw Error("magic", "period must be positive");
    }
    const double rr = static_cast<double>(r);
    Asymptotes out;
    out.small_r = std::log(rr * rr * rr / (6 * rr - 5));
    out.saturation = (L - 2.0 - epsilon) * std::numbers::ln2 -
                     3 * std::ldexp(1.0, static_cast<int>(L) - epsilon - 1) / (rr * rr);
    return out;
}

SparseState structured_state_sample(const SupportSet &support, u64 seed) {
    if (support.size() == 0) {
        throw Error("magic", "support must be non-empty");
    }
    CounterRng rng(seed);
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(support.size()));
    std::vector<SparseState::Entry> entries;
    entries.reserve(support.size());
    for (Bitstring s : support.strings) {
        entries.push_back({s, std::polar(magnitude, 2 * std::numbers::pi * rng.uniform())});
    }
    return SparseState::from_entries(support.width, std::move(entries));
}

double haar_average_m2(unsigned L) {
    if (L < 1) {
        throw Error("magic", "need at least one qubit");
    }
    const double d = std::ldexp(1.0, static_cast<int>(L));
    const double moment = (1 + 3 * (d * d - 1) / ((d + 1) * (d + 3))) / d;
    return -std::log(moment);
}

}  // namespace shormagic
