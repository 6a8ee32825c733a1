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

#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/core.h>
#include <json.hpp>

#include "config.hpp"
#include "selftest.hpp"
#include "shormagic/dense_reference.hpp"
#include "shormagic/error.hpp"
#include "shormagic/experiments.hpp"

namespace shormagic::cli {

namespace {

using nlohmann::json;

/// Bad input detected after CLI11 is done (missing values, bad config keys).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<u64> kDefaultModuli = {143, 323, 667, 1147, 2021, 3599};

struct Context {
    RunConfig config;
    std::ostream &out;
    std::ostream &err;
    std::vector<std::string> outputs;
    json summary = json::object();
};

void require_N(const RunConfig &c) {
    if (c.N == 0) {
        throw UsageError("--N is required");
    }
}

std::filesystem::path out_dir(const RunConfig &c) { return std::filesystem::path(c.out); }

/// Writes `table` to <out>/<name>, or to stdout when no --out was given.
void emit(Context &ctx, const Table &table, const std::string &name) {
    if (ctx.config.out.empty()) {
        table.write(ctx.out);
        return;
    }
    std::filesystem::create_directories(out_dir(ctx.config));
    table.write(out_dir(ctx.config) / name);
    ctx.outputs.push_back(name);
}

void write_manifest(const Context &ctx, double wall_seconds) {
    if (ctx.config.out.empty()) {
        return;
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    json manifest = {
        {"config", ctx.config},
        {"seed", ctx.config.seed},
        {"code_version", SHORMAGIC_VERSION},
        {"outputs", ctx.outputs},
        {"summary", ctx.summary},
        {"wall_time_s", wall_seconds},
        {"timestamp", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now))},
    };
    std::filesystem::create_directories(out_dir(ctx.config));
    std::ofstream f(out_dir(ctx.config) / "manifest.json");
    f << manifest.dump(2) << "\n";
    if (!f) {
        throw Error("cli", "failed to write manifest.json");
    }
}

/// Coprimes from --a, or one seeded pick per --r, or one per period.
std::vector<u64> resolve_coprimes(const RunConfig &c, u64 seed) {
    if (!c.a.empty() && !c.r.empty()) {
        throw UsageError("give either --a or --r, not both");
    }
    if (!c.a.empty()) {
        return c.a;
    }
    const OrderSpectrum spectrum = order_spectrum(c.N);
    if (c.r.empty()) {
        return one_coprime_per_period(spectrum, seed);
    }
    std::vector<u64> out;
    for (u64 r : c.r) {
        out.push_back(select_coprimes(spectrum, r, 1, derive_seed(seed, r)).front());
    }
    return out;
}

// --------------------------------------------------------------------------

void cmd_run(Context &ctx) {
    RunConfig &c = ctx.config;
    require_N(c);
    if (c.a.size() + c.r.size() != 1) {
        throw UsageError("run needs exactly one --a or --r");
    }
    const u64 a = resolve_coprimes(c, derive_seed(c.seed, "select")).front();
    const ShorInstance inst = ShorInstance::make(c.N, a, c.t);
    RunOptions options;
    options.record_steps = c.trace;
    RunResult result;
    if (c.engine == "dense") {
        result = dense_reference(inst, c.seed, options);
    } else {
        options.engine = c.engine == "generic" ? Engine::generic : Engine::orbit;
        result = run(inst, c.seed, options);
    }

    std::ostringstream trace;
    for (const StepTrace &s : result.steps) {
        trace << json{{"tau", s.tau}, {"outcome", s.outcome}, {"probability", s.probability},
                      {"support_size", s.support_size}}
                     .dump()
              << "\n";
    }
    const RunRecord &rec = result.record;
    json record = {{"N", inst.N},     {"a", inst.a},         {"r", inst.period()},
                   {"t", rec.t},      {"outcomes", rec.outcomes}, {"x_num", rec.x_num},
                   {"x", rec.x()},    {"success", rec.success}, {"seed", rec.seed}};
    record["found_period"] = rec.found_period ? json(*rec.found_period) : json(nullptr);
    ctx.summary = record;

    if (c.out.empty()) {
        ctx.out << trace.str() << record.dump() << "\n";
        return;
    }
    std::filesystem::create_directories(out_dir(c));
    if (c.trace) {
        std::ofstream(out_dir(c) / "trace.jsonl") << trace.str();
        ctx.outputs.push_back("trace.jsonl");
    }
    std::ofstream(out_dir(c) / "run.json") << record.dump(2) << "\n";
    ctx.outputs.push_back("run.json");
}

void cmd_magic_curve(Context &ctx) {
    RunConfig &c = ctx.config;
    require_N(c);
    if (c.reps == 0) c.reps = 150;
    MagicVsTauConfig config;
    config.N = c.N;
    config.coprimes = resolve_coprimes(c, derive_seed(c.seed, "select"));
    config.t = c.t;
    config.reps = c.reps;
    config.seed = c.seed;
    config.simulate = c.exact_sre;
    config.threads = c.threads;
    emit(ctx, to_table(exp_magic_vs_tau(config)), "magic_vs_tau.csv");
}

void cmd_magic_vs_r(Context &ctx) {
    RunConfig &c = ctx.config;
    require_N(c);
    if (c.samples_per_r == 0) c.samples_per_r = 10;
    MagicVsRConfig config;
    config.N = c.N;
    config.samples_per_r = c.samples_per_r;
    config.seed = c.seed;
    config.t = c.t;
    config.threads = c.threads;
    emit(ctx, to_table(exp_magic_vs_r(config)), "magic_vs_r.csv");
}

void cmd_success_rate(Context &ctx) {
    RunConfig &c = ctx.config;
    if (c.moduli.empty()) c.moduli = kDefaultModuli;
    if (c.reps == 0) c.reps = 100;
    if (c.coprimes_per_r == 0) c.coprimes_per_r = 100;
    SuccessRateConfig config;
    config.moduli = c.moduli;
    config.reps_per_a = c.reps;
    config.coprimes_per_r = c.coprimes_per_r;
    config.seed = c.seed;
    config.threads = c.threads;
    const auto rows = exp_success_rate(config);
    emit(ctx, to_table(rows), "success_rate.csv");
    const SlopeFit fit = success_slope(rows);
    ctx.summary = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"fit_points", fit.points}};
    ctx.err << fmt::format("log-log slope of S/S_max vs r/N over the top decade: {:.4f} ({} rows)\n", fit.slope,
                           fit.points);
}

void cmd_plateau(Context &ctx) {
    RunConfig &c = ctx.config;
    require_N(c);
    if (c.reps == 0) c.reps = 2000;
    PlateauConfig config;
    config.N = c.N;
    config.coprimes = resolve_coprimes(c, derive_seed(c.seed, "select"));
    config.t_min = c.t_min.value_or(2);
    config.t_max = c.t;
    config.reps = c.reps;
    config.seed = c.seed;
    config.threads = c.threads;
    const PlateauResult result = exp_plateau(config);
    emit(ctx, to_table(result.pairs), "plateau.csv");
    if (!c.out.empty()) {
        emit(ctx, to_table(result.sweep), "plateau_sweep.csv");
    }
}

void cmd_spectrum(Context &ctx) {
    require_N(ctx.config);
    const OrderSpectrum s = order_spectrum(ctx.config.N);
    Table table;
    table.header = {"r", "count", "g_num", "g_den", "g"};
    for (u64 r : s.periods()) {
        const Rational g = s.g(r);
        table.add_row({std::to_string(r), std::to_string(s.count(r)), std::to_string(g.num), std::to_string(g.den),
                       format_number(g.value())});
    }
    ctx.summary = {{"periods", s.periods().size()}, {"coprimes", s.total_coprimes}};
    emit(ctx, table, "spectrum.csv");
}

void cmd_selftest(Context &ctx) {
    const int failures = run_selftest(ctx.out);
    ctx.summary = {{"failures", failures}};
    if (failures > 0) {
        throw Error("selftest", std::to_string(failures) + " oracle check(s) failed");
    }
}

// --------------------------------------------------------------------------

struct Options {
    unsigned t = 0;
    unsigned t_min = 0;
    std::string config_path;
};

void add_common(CLI::App *sub, RunConfig &c, Options &o) {
    sub->add_option("--seed", c.seed, "top-level seed; all randomness derives from it");
    sub->add_option("--out", c.out, "output directory (default: CSV to stdout)");
    sub->add_option("--config", o.config_path, "flat key = value file; flags win over it");
    sub->add_option("--threads", c.threads, "worker threads (default: SHORMAGIC_THREADS or all cores)");
}

void add_modulus(CLI::App *sub, RunConfig &c) {
    sub->add_option("--N", c.N, "odd composite modulus")->check(CLI::Range(u64{9}, u64{1} << 40));
}

void add_selectors(CLI::App *sub, RunConfig &c) {
    sub->add_option("--a", c.a, "coprime(s), comma separated")->delimiter(',');
    sub->add_option("--r", c.r, "target period(s); one seeded coprime each")->delimiter(',');
}

/// Fills options the user did not pass on the command line from the file.
void apply_config_file(CLI::App *sub, const std::string &path) {
    for (const auto &[key, value] : read_config_file(path)) {
        CLI::Option *opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw UsageError("unknown key '" + key + "' in " + path + " for subcommand " + sub->get_name());
        }
        if (opt->count() == 0) {
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Semiclassical Shor order finding: nonstabilizerness and success statistics", "shormagic"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SHORMAGIC_VERSION);

    RunConfig c;
    Options o;

    auto *run_cmd = app.add_subcommand("run", "one execution, optionally with a per-step JSON-lines trace");
    add_common(run_cmd, c, o);
    add_modulus(run_cmd, c);
    add_selectors(run_cmd, c);
    run_cmd->add_option("--t", o.t, "number of steps (default 2n + 1)")->check(CLI::Range(1, 62));
    run_cmd->add_option("--engine", c.engine, "orbit, generic or dense")
        ->check(CLI::IsMember({"orbit", "generic", "dense"}));
    run_cmd->add_flag("--trace", c.trace, "emit one JSON line per step");

    auto *curve_cmd = app.add_subcommand("magic-curve", "M2 versus step, analytic and simulated");
    add_common(curve_cmd, c, o);
    add_modulus(curve_cmd, c);
    add_selectors(curve_cmd, c);
    curve_cmd->add_option("--t", o.t, "number of steps (default 2n + 1)")->check(CLI::Range(1, 62));
    curve_cmd->add_option("--reps", c.reps, "simulated runs averaged per step (default 150)")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_flag("--exact-sre,!--no-exact-sre", c.exact_sre, "simulate and measure SRE when L <= 12");

    auto *vsr_cmd = app.add_subcommand("magic-vs-r", "final M2 for every period of N");
    add_common(vsr_cmd, c, o);
    add_modulus(vsr_cmd, c);
    vsr_cmd->add_option("--t", o.t, "number of steps (default 2n + 1)")->check(CLI::Range(1, 62));
    vsr_cmd->add_option("--samples-per-r", c.samples_per_r, "coprimes per period (default 10)")
        ->check(CLI::PositiveNumber);

    auto *rate_cmd = app.add_subcommand("success-rate", "conditional success rate S = g p_succ");
    add_common(rate_cmd, c, o);
    rate_cmd->add_option("--moduli", c.moduli, "comma separated moduli (default six semiprimes, L 9..13)")
        ->delimiter(',');
    rate_cmd->add_option("--reps", c.reps, "runs per coprime (default 100)")->check(CLI::PositiveNumber);
    rate_cmd->add_option("--coprimes-per-r", c.coprimes_per_r, "coprimes per period (default 100)")
        ->check(CLI::PositiveNumber);

    auto *plateau_cmd = app.add_subcommand("plateau", "plateau length versus success-decay interval");
    add_common(plateau_cmd, c, o);
    add_modulus(plateau_cmd, c);
    add_selectors(plateau_cmd, c);
    plateau_cmd->add_option("--t", o.t, "top of the sweep (default 2n + 1)")->check(CLI::Range(1, 62));
    plateau_cmd->add_option("--t-min", o.t_min, "bottom of the sweep (default 2)")->check(CLI::Range(1, 62));
    plateau_cmd->add_option("--reps", c.reps, "runs per t (default 2000)")->check(CLI::PositiveNumber);

    auto *spectrum_cmd = app.add_subcommand("spectrum", "distinct orders and their frequencies g(r)");
    add_common(spectrum_cmd, c, o);
    add_modulus(spectrum_cmd, c);

    auto *selftest_cmd = app.add_subcommand("selftest", "oracle-equivalence checks");
    add_common(selftest_cmd, c, o);

    const std::map<CLI::App *, void (*)(Context &)> handlers = {
        {run_cmd, cmd_run},           {curve_cmd, cmd_magic_curve}, {vsr_cmd, cmd_magic_vs_r},
        {rate_cmd, cmd_success_rate}, {plateau_cmd, cmd_plateau},   {spectrum_cmd, cmd_spectrum},
        {selftest_cmd, cmd_selftest},
    };

    CLI::App *sub = nullptr;
    try {
        app.parse(argc, argv);
        sub = app.get_subcommands().front();
        if (!o.config_path.empty()) {
            apply_config_file(sub, o.config_path);
        }
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n" << sub->help();
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return 2;
    }

    if (o.t != 0) {
        c.t = o.t;
    }
    if (o.t_min != 0) {
        c.t_min = o.t_min;
    }
    c.command = sub->get_name();

    Context ctx{c, out, err, {}, json::object()};
    const auto start = std::chrono::steady_clock::now();
    try {
        handlers.at(sub)(ctx);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(ctx, wall);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n" << sub->help();
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error [cli]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace shormagic::cli
