/*
 * Copyright 2026 The varscale Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "varscale/convergence.hpp"
#include "varscale/error.hpp"
#include "varscale/fitting.hpp"
#include "varscale/io.hpp"
#include "varscale/portfolio.hpp"
#include "varscale/riskmeasure.hpp"

namespace varscale::cli {

namespace {

struct Settings {
    double alpha = 7e-4;
    int horizon = 250;
    std::uint64_t seed = 1;
    std::string input;
    std::string output;
    std::string family;
    bool zero_mean = true;
    std::optional<double> var1d;
    std::optional<double> nu;
    std::size_t repeats = 200;
    std::size_t window = kDefaultWindow;
    std::string history;
    std::string rates;
    std::size_t days = kDefaultWindow + 1;
    std::size_t assets = 10;
    double vol_of_vol = 0.0;
    double return_sd = 0.01;
    double correlation = 0.3;
    std::string curve_output;
    std::string detail_output;
    std::string rates_output;
    std::string grid_output;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config_error:
        case ErrorKind::invalid_family:
        case ErrorKind::invalid_spec:
            return kExitConfig;
        case ErrorKind::parse_error:
        case ErrorKind::misaligned_history:
        case ErrorKind::insufficient_history:
            return kExitParse;
        case ErrorKind::non_convergence:
            return kExitNonConvergence;
        default:
            return kExitNumeric;
    }
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message, int code) {
    const nlohmann::json j = {{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
    err << j.dump() << '\n';
}

// Writes `content` atomically to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        io::write_file_atomic(path, content);
    }
}

void emit_json(const Settings& s, const nlohmann::json& j, std::ostream& out) {
    emit(s.output, j.dump(2) + "\n", out);
}

EmpiricalSample load_sample(const Settings& s) {
    if (s.input.empty()) fail(ErrorKind::config_error, "--input is required");
    return EmpiricalSample(io::read_pnl_csv(s.input), s.input);
}

std::vector<Family> requested_families(const Settings& s) {
    if (s.family.empty()) return {Family::normal, Family::student_t, Family::variance_gamma};
    return {family_from_string(s.family)};
}

FitResult fit_family(const EmpiricalSample& sample, Family f) {
    return f == Family::normal ? fit_normal(sample) : fit_cdf_mse(sample, f);
}

void cmd_fit(const Settings& s, std::ostream& out) {
    const std::vector<Family> families = requested_families(s);
    const EmpiricalSample sample = load_sample(s);
    nlohmann::json fits = nlohmann::json::array();
    std::optional<FitResult> best;
    for (Family f : families) {
        const FitResult r = fit_family(sample, f);
        fits.push_back(io::to_json(r));
        if (!best || r.mse < best->mse) best = r;
    }
    emit_json(s,
              {{"n_obs", sample.size()},
               {"fits", fits},
               {"best_family", std::string(to_string(family_of(best->params)))}},
              out);
}

void cmd_scale(const Settings& s, std::ostream& out) {
    const std::vector<Family> families = requested_families(s);
    const EmpiricalSample sample = load_sample(s);
    std::optional<FitResult> chosen;
    for (Family f : families) {
        FitResult r = fit_family(sample, f);
        if (!chosen || r.mse < chosen->mse) chosen = std::move(r);
    }
    ScaleOptions opt;
    opt.zero_mean = s.zero_mean;
    const VaRFigure v = scale_var(*chosen, s.alpha, s.horizon, opt);
    nlohmann::json j = {{"input", s.input}, {"fit", io::to_json(*chosen)}, {"var", io::to_json(v)}};
    if (const auto* st = std::get_if<StudentTParams>(&chosen->params); st && s.horizon > 1) {
        j["regime"] = io::to_json(classify_regime(st->nu, s.alpha, s.horizon));
    }
    if (!s.grid_output.empty()) {
        const Family f = family_of(v.one_day);
        const DensityGrid g =
            convolve_n_fft(discretize(v.one_day, s.horizon, default_tail_sigmas(f)), s.horizon);
        io::write_file_atomic(s.grid_output, io::grid_csv(g));
    }
    emit_json(s, j, out);
}

void cmd_ec(const Settings& s, std::ostream& out) {
    if (!s.var1d) fail(ErrorKind::config_error, "--var1d is required");
    const double value = ec_normal_srtr(*s.var1d, s.alpha, s.horizon);
    emit_json(s,
              {{"alpha", s.alpha},
               {"horizon", s.horizon},
               {"var_1d", *s.var1d},
               {"value", value},
               {"method", std::string(to_string(VaRMethod::srtr_normal))}},
              out);
}

void cmd_converge(const Settings& s, std::ostream& out) {
    nlohmann::json j;
    if (s.nu) {
        j = io::to_json(classify_regime(*s.nu, s.alpha, s.horizon));
    } else {
        const double nu_star = critical_nu(s.alpha, s.horizon);
        j = {{"alpha", s.alpha},
             {"horizon", s.horizon},
             {"nu_star", nu_star},
             {"x_star", critical_x(1.0, nu_star, s.horizon)}};
    }
    if (!s.curve_output.empty()) {
        std::vector<double> alphas;
        for (int i = 0; i <= 18; ++i) alphas.push_back(1e-4 + 5e-5 * i);
        io::write_file_atomic(s.curve_output,
                              io::curve_csv(critical_nu_curve(alphas, s.horizon), "alpha", "nu_star"));
    }
    emit_json(s, j, out);
}

SynthSpec synth_spec(const Settings& s) {
    SynthSpec spec;
    spec.n_assets = s.assets;
    if (!s.family.empty()) spec.return_family = family_from_string(s.family);
    if (s.nu) spec.nu = *s.nu;
    spec.vol_of_vol = s.vol_of_vol;
    spec.daily_return_sd = s.return_sd;
    spec.correlation = s.correlation;
    return spec;
}

void cmd_sweep(const Settings& s, std::ostream& out) {
    MarketHistory history;
    std::uint64_t sweep_seed = s.seed;
    if (!s.history.empty()) {
        if (s.rates.empty()) fail(ErrorKind::config_error, "--rates is required with --history");
        history = io::read_market_history(s.history, s.rates);
    } else {
        // One seed drives both the synthetic market and the weights.
        history = synth_history(synth_spec(s), s.days, s.seed);
        sweep_seed = s.seed ^ 0x9E3779B97F4A7C15ULL;
    }
    SweepOptions opt;
    opt.alpha = s.alpha;
    opt.horizon = s.horizon;
    opt.window = s.window;
    const SweepReport report = random_weight_sweep(history, s.repeats, sweep_seed, opt);
    if (!s.detail_output.empty()) io::write_file_atomic(s.detail_output, io::sweep_detail_csv(report));
    nlohmann::json j = io::to_json(report);
    j["history"] = s.history.empty() ? "synthetic" : s.history;
    emit_json(s, j, out);
}

void cmd_simulate(const Settings& s, std::ostream& out) {
    const MarketHistory h = synth_history(synth_spec(s), s.days, s.seed);
    if (!s.rates_output.empty()) io::write_file_atomic(s.rates_output, io::rates_csv(h));
    emit(s.output, io::market_history_csv(h), out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Long-horizon VaR scaling for fat-tailed P&L distributions", "varscale"};
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
    app.require_subcommand(1, 1);

    app.add_option("--alpha", s.alpha, "Tail probability")
        ->check(CLI::Range(0.0, 0.5))
        ->capture_default_str();
    app.add_option("--horizon", s.horizon, "Horizon in days")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", s.seed, "Seed for every random draw")->capture_default_str();
    app.add_option("--input", s.input, "Single-column P&L CSV");
    app.add_option("--output", s.output, "Result file (default: standard output)");
    app.add_option("--family", s.family, "normal, student_t or variance_gamma");
    app.add_flag("--zero-mean,!--no-zero-mean", s.zero_mean, "Remove the fitted mean before scaling");
    app.add_option("--var1d", s.var1d, "One-day 99% VaR for ec")->check(CLI::PositiveNumber);
    app.add_option("--nu", s.nu, "Fitted degrees of freedom (converge) or generator nu (simulate, sweep)")
        ->check(CLI::PositiveNumber);
    app.add_option("--repeats", s.repeats, "Sweep repeats")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--window", s.window, "Historical window length")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--history", s.history, "Long-format market history CSV");
    app.add_option("--rates", s.rates, "Funding rate CSV (date,rate)");
    app.add_option("--days", s.days, "Synthetic history length")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--assets", s.assets, "Synthetic asset count")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--vol-of-vol", s.vol_of_vol, "Daily sd of synthetic log-vol shocks")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--return-sd", s.return_sd, "Daily sd of synthetic returns")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--correlation", s.correlation, "Synthetic pairwise return correlation")
        ->capture_default_str();
    app.add_option("--curve-output", s.curve_output, "converge: alpha,nu_star CSV");
    app.add_option("--detail-output", s.detail_output, "sweep: per-repeat CSV");
    app.add_option("--rates-output", s.rates_output, "simulate: rates CSV");
    app.add_option("--grid-output", s.grid_output, "scale: horizon density grid CSV");

    struct Command {
        const char* name;
        const char* help;
        void (*body)(const Settings&, std::ostream&);
    };
    const Command commands[] = {
        {"fit", "Fit Normal, Student's t and Variance-Gamma laws to a P&L sample", cmd_fit},
        {"scale", "Scale the best-fitting one-day law to the horizon VaR", cmd_scale},
        {"ec", "Economic capital from a one-day 99% VaR by square-root-of-time", cmd_ec},
        {"converge", "Critical degrees of freedom and regime classification", cmd_converge},
        {"sweep", "Random-weight portfolio sweep over a market history", cmd_sweep},
        {"simulate", "Write a synthetic market history", cmd_simulate},
    };
    std::vector<CLI::App*> subs;
    for (const Command& c : commands) subs.push_back(app.add_subcommand(c.name, c.help)->fallthrough());

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, to_string(ErrorKind::config_error), e.what(), kExitConfig);
        return kExitConfig;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) commands[i].body(s, out);
        }
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        emit_error(err, to_string(e.kind()), e.what(), code);
        return code;
    } catch (const std::exception& e) {
        emit_error(err, "internal_error", e.what(), kExitNumeric);
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace varscale::cli
