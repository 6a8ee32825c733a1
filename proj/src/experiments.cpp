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

#include "shormagic/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include <Eigen/Dense>

#include "shormagic/error.hpp"
#include "shormagic/parallel.hpp"
#include "shormagic/rng.hpp"

namespace shormagic {

namespace {

ShorInstance with_t(const ShorInstance &instance, unsigned t) {
    if (t < 1 || t > 62) {
        throw Error("experiments", "t = " + std::to_string(t) + " outside [1, 62]");
    }
    ShorInstance copy = instance;
    copy.t = t;
    return copy;
}

bool run_succeeds(const ShorInstance &instance, u64 seed) {
    const RunRecord record = run(instance, seed).record;
    if (record.success && record.found_period != instance.period()) {
        throw Error("experiments", "success reported with a period other than r");
    }
    return record.success;
}

std::string format_integer(u64 v) { return std::to_string(v); }

}  // namespace

std::vector<u64> select_coprimes(const OrderSpectrum &spectrum, u64 r, std::size_t count, u64 seed) {
    auto it = spectrum.members.find(r);
    if (it == spectrum.members.end() || it->second.empty()) {
        throw Error("experiments", "no coprime of N = " + std::to_string(spectrum.N) + " has order " + std::to_string(r));
    }
    std::vector<u64> pool = it->second;
    if (count >= pool.size()) {
        return pool;
    }
    // Partial Fisher-Yates.
    CounterRng rng(seed);
    for (std::size_t i = 0; i < count; i++) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<u64> one_coprime_per_period(const OrderSpectrum &spectrum, u64 seed) {
    std::vector<u64> out;
    for (u64 r : spectrum.periods()) {
        out.push_back(select_coprimes(spectrum, r, 1, derive_seed(seed, r)).front());
    }
    return out;
}

SuccessEstimate binomial_estimate(u64 successes, u64 trials) {
    if (trials == 0) {
        throw Error("experiments", "binomial estimate needs at least one trial");
    }
    if (successes > trials) {
        throw Error("experiments", "more successes than trials");
    }
    SuccessEstimate e;
    e.successes = successes;
    e.trials = trials;
    const double n = static_cast<double>(trials);
    e.p = static_cast<double>(successes) / n;
    if (successes == 0) {
        e.ci_low = 0;
        e.ci_high = 1 - std::pow(0.05, 1 / n);
        return e;
    }
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double centre = (e.p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(e.p * (1 - e.p) / n + z2 / (4 * n * n));
    e.ci_low = std::max(0.0, centre - half);
    e.ci_high = std::min(1.0, centre + half);
    return e;
}

SuccessEstimate estimate_p_succ(const ShorInstance &instance, unsigned t, unsigned reps, u64 seed,
                                unsigned threads) {
    if (reps == 0) {
        throw Error("experiments", "reps must be at least 1");
    }
    const ShorInstance inst = with_t(instance, t);
    std::vector<char> ok(reps, 0);
    parallel_for(
        reps, [&](std::size_t i) { ok[i] = run_succeeds(inst, derive_seed(seed, u64{i})); }, threads);
    return binomial_estimate(static_cast<u64>(std::count(ok.begin(), ok.end(), 1)), reps);
}

// ---------------------------------------------------------------------------

std::vector<MagicVsTauRow> exp_magic_vs_tau(const MagicVsTauConfig &config) {
    std::vector<MagicVsTauRow> rows;
    for (u64 a : config.coprimes) {
        const ShorInstance inst = ShorInstance::make(config.N, a, config.t);
        const MagicCurve exact = m2_curve_analytic(inst, LambdaMode::exact);
        const MagicCurve closed = m2_curve_analytic(inst, LambdaMode::closed);

        std::vector<std::optional<double>> simulated(inst.t);
        if (config.simulate && inst.L <= kBruteForceMaxQubits && config.reps > 0) {
            // Per-run SRE per step, reduced afterwards in run order.
            std::vector<std::vector<double>> per_run(config.reps);
            const u64 base = derive_seed(derive_seed(config.seed, "magic-vs-tau"), a);
            parallel_for(
                config.reps,
                [&](std::size_t i) {
                    RunOptions options;
                    options.snapshot_probes = true;
                    const RunResult result = run(inst, derive_seed(base, u64{i}), options);
                    auto &m = per_run[i];
                    m.reserve(result.steps.size());
                    for (const StepTrace &s : result.steps) {
                        m.push_back(sre_sparse_exact(*s.probe));
                    }
                },
                config.threads);
            for (unsigned tau = 0; tau < inst.t; tau++) {
                double sum = 0;
                for (const auto &m : per_run) {
                    sum += m[tau];
                }
                simulated[tau] = sum / config.reps;
            }
        }

        for (unsigned i = 0; i < inst.t; i++) {
            MagicVsTauRow row;
            row.r = inst.period();
            row.a = a;
            row.tau = exact.points[i].tau;
            row.D = exact.points[i].schedule.D;
            row.m2_exact_lambda = exact.points[i].m2;
            row.m2_closed_lambda = closed.points[i].m2;
            row.m2_simulated = simulated[i];
            row.regime = exact.points[i].schedule.regime;
            rows.push_back(row);
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const MagicVsTauRow &x, const MagicVsTauRow &y) {
        return std::tie(x.r, x.a, x.tau) < std::tie(y.r, y.a, y.tau);
    });
    return rows;
}

Table to_table(const std::vector<MagicVsTauRow> &rows) {
    Table table;
    table.header = {"r", "a", "tau", "D", "m2_analytic_exactLambda", "m2_analytic_closedLambda",
                    "m2_exact_if_feasible", "regime"};
    for (const auto &row : rows) {
        table.add_row({format_integer(row.r), format_integer(row.a), format_integer(row.tau), format_integer(row.D),
                       format_number(row.m2_exact_lambda), format_number(row.m2_closed_lambda),
                       format_number(row.m2_simulated), std::string(to_string(row.regime))});
    }
    return table;
}

// ---------------------------------------------------------------------------

std::vector<MagicVsRRow> exp_magic_vs_r(const MagicVsRConfig &config) {
    const OrderSpectrum spectrum = order_spectrum(config.N);
    const u64 base = derive_seed(config.seed, "magic-vs-r");
    std::vector<std::pair<u64, u64>> work;  // (r, a)
    for (u64 r : spectrum.periods()) {
        for (u64 a : select_coprimes(spectrum, r, config.samples_per_r, derive_seed(base, r))) {
            work.emplace_back(r, a);
        }
    }
    std::vector<MagicVsRRow> rows(work.size());
    parallel_for(
        work.size(),
        [&](std::size_t i) {
            const auto [r, a] = work[i];
            const ShorInstance inst = ShorInstance::make(config.N, a, config.t);
            const Asymptotes asym = m2_final_asymptotes(r, inst.L, inst.decomposition.epsilon);
            MagicVsRRow &row = rows[i];
            row.r = r;
            row.a = a;
            row.L = inst.L;
            row.m2_final_exact_lambda = m2_analytic(inst, inst.t, LambdaMode::exact).m2;
            row.m2_final_closed_lambda = m2_analytic(inst, inst.t, LambdaMode::closed).m2;
            row.small_r = asym.small_r;
            row.saturation = asym.saturation;
        },
        config.threads);
    return rows;
}

Table to_table(const std::vector<MagicVsRRow> &rows) {
    Table table;
    table.header = {"r", "a", "L", "m2_final_exactLambda", "m2_final_closedLambda", "m2_small_r_asymptote",
                    "m2_saturation_asymptote"};
    for (const auto &row : rows) {
        table.add_row({format_integer(row.r), format_integer(row.a), format_integer(row.L),
                       format_number(row.m2_final_exact_lambda), format_number(row.m2_final_closed_lambda),
                       format_number(row.small_r), format_number(row.saturation)});
    }
    return table;
}

// ---------------------------------------------------------------------------

std::vector<SuccessStats> exp_success_rate(const SuccessRateConfig &config) {
    if (config.reps_per_a == 0 || config.coprimes_per_r == 0) {
        throw Error("experiments", "reps_per_a and coprimes_per_r must be positive");
    }
    std::vector<SuccessStats> out;
    const u64 root = derive_seed(config.seed, "success-rate");
    std::vector<u64> moduli = config.moduli;
    std::sort(moduli.begin(), moduli.end());
    for (u64 N : moduli) {
        const OrderSpectrum spectrum = order_spectrum(N);
        const u64 base = derive_seed(root, N);

        struct Item {
            std::size_t row;
            ShorInstance instance;
        };
        std::vector<SuccessStats> rows;
        std::vector<Item> items;
        for (u64 r : spectrum.periods()) {
            const auto chosen = select_coprimes(spectrum, r, config.coprimes_per_r, derive_seed(base, r));
            SuccessStats row;
            row.N = N;
            row.r = r;
            row.a = chosen.front();
            row.coprimes = chosen.size();
            row.g = spectrum.g(r);
            for (u64 a : chosen) {
                items.push_back({rows.size(), ShorInstance::make(N, a)});
            }
            rows.push_back(row);
        }

        const std::size_t reps = config.reps_per_a;
        std::vector<char> ok(items.size() * reps, 0);
        std::vector<double> m2(items.size(), 0);
        parallel_for(
            ok.size(),
            [&](std::size_t i) {
                const Item &item = items[i / reps];
                const u64 seed = derive_seed(derive_seed(base, item.instance.a), u64{i % reps});
                ok[i] = run_succeeds(item.instance, seed);
                if (i % reps == 0) {
                    m2[i / reps] = m2_analytic(item.instance, item.instance.t, LambdaMode::exact).m2;
                }
            },
            config.threads);

        std::vector<u64> successes(rows.size(), 0);
        std::vector<double> m2_sum(rows.size(), 0);
        for (std::size_t k = 0; k < items.size(); k++) {
            const std::size_t row = items[k].row;
            for (std::size_t j = 0; j < reps; j++) {
                successes[row] += ok[k * reps + j];
            }
            m2_sum[row] += m2[k];
            rows[row].L = items[k].instance.L;
        }
        double s_max = 0;
        for (std::size_t i = 0; i < rows.size(); i++) {
            SuccessStats &row = rows[i];
            row.p = binomial_estimate(successes[i], row.coprimes * reps);
            row.S = row.g.value() * row.p.p;
            row.m2_final = m2_sum[i] / static_cast<double>(row.coprimes);
            row.m2_ratio = row.m2_final / (row.L * std::numbers::ln2);
            s_max = std::max(s_max, row.S);
        }
        for (SuccessStats &row : rows) {
            row.S_norm = s_max > 0 ? row.S / s_max : 0;
            out.push_back(row);
        }
    }
    return out;
}

Table to_table(const std::vector<SuccessStats> &rows) {
    Table table;
    table.header = {"N",      "L",       "r",       "a",     "n_coprimes", "g",       "p_succ",
                    "ci_low", "ci_high", "successes", "trials", "S",       "S_norm", "r_over_N",
                    "m2_final", "m2_ratio"};
    for (const auto &row : rows) {
        table.add_row({format_integer(row.N), format_integer(row.L), format_integer(row.r), format_integer(row.a),
                       format_integer(row.coprimes), format_number(row.g.value()), format_number(row.p.p),
                       format_number(row.p.ci_low), format_number(row.p.ci_high), format_integer(row.p.successes),
                       format_integer(row.p.trials), format_number(row.S), format_number(row.S_norm),
                       format_number(static_cast<double>(row.r) / static_cast<double>(row.N)),
                       format_number(row.m2_final), format_number(row.m2_ratio)});
    }
    return table;
}

SlopeFit success_slope(const std::vector<SuccessStats> &rows, double s_floor, double decades) {
    std::map<u64, double> top;  // largest r/N per modulus
    for (const auto &row : rows) {
        const double x = static_cast<double>(row.r) / static_cast<double>(row.N);
        top[row.N] = std::max(top[row.N], x);
    }
    std::vector<double> xs, ys;
    for (const auto &row : rows) {
        const double x = static_cast<double>(row.r) / static_cast<double>(row.N);
        if (row.S_norm > s_floor && x >= top[row.N] * std::pow(10.0, -decades)) {
            xs.push_back(std::log(x));
            ys.push_back(std::log(row.S_norm));
        }
    }
    SlopeFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) {
        throw Error("experiments", "slope fit needs at least two rows above the floor");
    }
    Eigen::MatrixXd A(xs.size(), 2);
    Eigen::VectorXd b(xs.size());
    for (std::size_t i = 0; i < xs.size(); i++) {
        A(i, 0) = xs[i];
        A(i, 1) = 1;
        b(i) = ys[i];
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
    fit.slope = coef(0);
    fit.intercept = coef(1);
    return fit;
}

// ---------------------------------------------------------------------------

int plateau_length_m2(unsigned t_max, u64 r) { return static_cast<int>(t_max) - static_cast<int>(ceil_log2(r)); }

PlateauResult exp_plateau(const PlateauConfig &config) {
    PlateauResult result;
    const u64 root = derive_seed(config.seed, "plateau");
    std::vector<u64> coprimes = config.coprimes;
    std::sort(coprimes.begin(), coprimes.end());
    for (u64 a : coprimes) {
        const ShorInstance inst = ShorInstance::make(config.N, a);
        const unsigned t_max = config.t_max.value_or(inst.t);
        if (config.t_min < 1 || config.t_min > t_max || t_max > 2 * inst.n + 1) {
            throw Error("experiments", "t range must lie within [1, 2n + 1]");
        }
        const u64 seed_a = derive_seed(root, a);
        PlateauPair pair;
        pair.a = a;
        pair.r = inst.period();
        pair.t_max = t_max;
        pair.delta_tau_m2 = plateau_length_m2(t_max, pair.r);
        for (unsigned t = t_max; t >= config.t_min; t--) {
            const SuccessEstimate p = estimate_p_succ(inst, t, config.reps, derive_seed(seed_a, u64{t}), config.threads);
            result.sweep.push_back({a, pair.r, t, p});
            if (p.successes == 0) {
                pair.zero_t = t;
                break;
            }
        }
        // Censored sweeps report the interval to the bottom of the range.
        pair.delta_tau_psucc = static_cast<int>(t_max) - static_cast<int>(pair.zero_t.value_or(config.t_min - 1));
        result.pairs.push_back(pair);
    }
    return result;
}

Table to_table(const std::vector<PlateauPair> &rows) {
    Table table;
    table.header = {"a", "r", "t_max", "delta_tau_m2", "delta_tau_psucc", "censored"};
    for (const auto &row : rows) {
        table.add_row({format_integer(row.a), format_integer(row.r), format_integer(row.t_max),
                       std::to_string(row.delta_tau_m2), std::to_string(row.delta_tau_psucc),
                       row.zero_t ? "0" : "1"});
    }
    return table;
}

Table to_table(const std::vector<PlateauSweepRow> &rows) {
    Table table;
    table.header = {"a", "r", "t", "p_succ", "ci_low", "ci_high", "successes", "trials"};
    for (const auto &row : rows) {
        table.add_row({format_integer(row.a), format_integer(row.r), format_integer(row.t), format_number(row.p.p),
                       format_number(row.p.ci_low), format_number(row.p.ci_high), format_integer(row.p.successes),
                       format_integer(row.p.trials)});
    }
    return table;
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error("experiments", "correlation needs two equally long samples of size >= 2");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        throw Error("experiments", "correlation undefined for a constant sample");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace shormagic
