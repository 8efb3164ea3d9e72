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

#include "varscale/portfolio.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "varscale/black_scholes.hpp"
#include "varscale/error.hpp"
#include "varscale/fitting.hpp"
#include "varscale/riskmeasure.hpp"

namespace varscale {

namespace {

// Index i with axis[i] <= x < axis[i + 1] and the weight of axis[i + 1],
// clamped to the end nodes.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x) {
    if (axis.size() == 1 || x <= axis.front()) return {0, 0.0};
    if (x >= axis.back()) return {axis.size() - 2, 1.0};
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    const auto i = static_cast<std::size_t>(it - axis.begin()) - 1;
    return {i, (x - axis[i]) / (axis[i + 1] - axis[i])};
}

bool strictly_increasing(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

std::string business_date(std::size_t index) {
    using namespace std::chrono;
    sys_days day = year{2010} / January / 4;  // a Monday
    const auto weeks = static_cast<int>(index / 5);
    day += days{7 * weeks + static_cast<int>(index % 5)};
    const year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace

VolSurface::VolSurface(std::vector<double> strikes, std::vector<double> tenors,
                       std::vector<double> vols)
    : strikes_(std::move(strikes)), tenors_(std::move(tenors)), vols_(std::move(vols)) {
    require(!strikes_.empty() && !tenors_.empty(), ErrorKind::invalid_params,
            "VolSurface: axes must be non-empty");
    require(strictly_increasing(strikes_) && strictly_increasing(tenors_),
            ErrorKind::invalid_params, "VolSurface: axes must be strictly increasing");
    require(vols_.size() == strikes_.size() * tenors_.size(), ErrorKind::invalid_params,
            "VolSurface: lattice size does not match the axes");
    for (double v : vols_) {
        require(std::isfinite(v) && v > 0.0, ErrorKind::invalid_params,
                "VolSurface: vols must be positive");
    }
}

VolSurface VolSurface::from_atm(double spot, double atm_vol, double skew) {
    require(spot > 0.0 && atm_vol > 0.0, ErrorKind::invalid_params,
            "VolSurface: spot and ATM vol must be positive");
    static constexpr double kMoneyness[] = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                                            1.1, 1.2, 1.3, 1.4, 1.5};
    std::vector<double> tenors = {1.0 / 12.0, 0.25, 0.5, 1.0};
    std::vector<double> strikes;
    std::vector<double> vols;
    for (double m : kMoneyness) {
        strikes.push_back(spot * m);
        const double v = std::max(0.01 * atm_vol, atm_vol * (1.0 + skew * std::log(m)));
        for (std::size_t j = 0; j < tenors.size(); ++j) vols.push_back(v);
    }
    return VolSurface(std::move(strikes), std::move(tenors), std::move(vols));
}

double VolSurface::vol(double strike, double tenor) const {
    const auto [i, u] = locate(strikes_, strike);
    const auto [j, t] = locate(tenors_, tenor);
    const std::size_t nt = tenors_.size();
    const std::size_t i1 = std::min(i + 1, strikes_.size() - 1);
    const std::size_t j1 = std::min(j + 1, nt - 1);
    const double v00 = vols_[i * nt + j];
    const double v01 = vols_[i * nt + j1];
    const double v10 = vols_[i1 * nt + j];
    const double v11 = vols_[i1 * nt + j1];
    return (1.0 - u) * ((1.0 - t) * v00 + t * v01) + u * ((1.0 - t) * v10 + t * v11);
}

VolSurface VolSurface::scaled(double factor) const {
    require(std::isfinite(factor) && factor > 0.0, ErrorKind::invalid_params,
            "VolSurface: scale factor must be positive");
    std::vector<double> v = vols_;
    for (double& x : v) x *= factor;
    return VolSurface(strikes_, tenors_, std::move(v));
}

void validate(const MarketHistory& h) {
    const std::size_t days = h.n_days();
    require(h.spots.size() == h.n_assets() && h.atm_vols.size() == h.n_assets(),
            ErrorKind::misaligned_history, "MarketHistory: one spot and vol series per asset");
    require(h.rates.size() == days, ErrorKind::misaligned_history,
            "MarketHistory: rate series length differs from the date axis");
    require(h.n_assets() > 0, ErrorKind::invalid_params, "MarketHistory: no assets");
    for (std::size_t a = 0; a < h.n_assets(); ++a) {
        require(h.spots[a].size() == days && h.atm_vols[a].size() == days,
                ErrorKind::misaligned_history,
                "MarketHistory: asset series length differs from the date axis");
        for (std::size_t d = 0; d < days; ++d) {
            require(std::isfinite(h.spots[a][d]) && h.spots[a][d] > 0.0,
                    ErrorKind::invalid_params, "MarketHistory: spots must be positive");
            require(std::isfinite(h.atm_vols[a][d]) && h.atm_vols[a][d] > 0.0,
                    ErrorKind::invalid_params, "MarketHistory: vols must be positive");
        }
    }
    for (double r : h.rates) {
        require(std::isfinite(r), ErrorKind::invalid_params, "MarketHistory: rates must be finite");
    }
    require(std::isfinite(h.dividend_yield), ErrorKind::invalid_params,
            "MarketHistory: dividend yield must be finite");
}

Portfolio build_portfolio(const MarketHistory& history, std::size_t as_of,
                          std::span<const double> weights, std::size_t window) {
    validate(history);
    require(weights.size() == history.n_assets(), ErrorKind::invalid_params,
            "build_portfolio: one weight per asset is required");
    require(window >= 1, ErrorKind::invalid_params, "build_portfolio: window must be positive");
    if (as_of >= history.n_days() || as_of < window) {
        fail(ErrorKind::insufficient_history,
             "build_portfolio: the as-of date needs " + std::to_string(window) +
                 " prior observations");
    }
    Portfolio p;
    p.as_of = as_of;
    const double rate = history.rates[as_of];
    const double q = history.dividend_yield;
    for (std::size_t a = 0; a < history.n_assets(); ++a) {
        const double w = weights[a];
        require(std::isfinite(w) && w > 0.0 && w <= 1.0, ErrorKind::invalid_params,
                "build_portfolio: weights must lie in (0, 1]");
        const double spot = history.spots[a][as_of];
        const VolSurface surface = VolSurface::from_atm(spot, history.atm_vols[a][as_of], history.skew);
        Position pos;
        pos.asset = a;
        pos.weight = w;
        pos.strike = spot;
        pos.expiry_tau = kOptionTenor;
        pos.option_notional = w / spot;
        pos.hedge_shares = pos.option_notional *
                           bs_delta(spot, pos.strike, pos.expiry_tau, rate, q,
                                    surface.vol(pos.strike, pos.expiry_tau));
        p.positions.push_back(pos);
    }
    return p;
}

std::vector<double> historical_pnl(const Portfolio& portfolio, const MarketHistory& history,
                                   std::size_t window) {
    validate(history);
    const std::size_t as_of = portfolio.as_of;
    if (as_of >= history.n_days() || as_of < window || window == 0) {
        fail(ErrorKind::insufficient_history,
             "historical_pnl: not enough observations before the as-of date");
    }
    const double q = history.dividend_yield;
    const double rate0 = history.rates[as_of];
    std::vector<double> pnl(window, 0.0);

    for (const Position& pos : portfolio.positions) {
        if (pos.asset >= history.n_assets()) {
            fail(ErrorKind::misaligned_history, "historical_pnl: position refers to an unknown asset");
        }
        const auto& spots = history.spots[pos.asset];
        const auto& vols = history.atm_vols[pos.asset];
        const double spot0 = spots[as_of];
        const bool has_option = pos.option_notional != 0.0;
        double vol0 = 0.0;
        double price0 = 0.0;
        if (has_option) {
            const VolSurface surface = VolSurface::from_atm(spot0, vols[as_of], history.skew);
            vol0 = surface.vol(pos.strike, pos.expiry_tau);
            price0 = bs_call_price(spot0, pos.strike, pos.expiry_tau, rate0, q, vol0);
        }
        for (std::size_t k = 0; k < window; ++k) {
            const std::size_t d = as_of - window + 1 + k;
            const double spot_shock = spots[d] / spots[d - 1] - 1.0;
            const double spot = spot0 * (1.0 + spot_shock);
            double value = -pos.hedge_shares * (spot - spot0);
            if (has_option) {
                // One relative shock moves every node of the surface, so the
                // interpolated vol scales by the same factor.
                const double vol = vol0 * (vols[d] / vols[d - 1]);
                const double rate = rate0 + (history.rates[d] - history.rates[d - 1]);
                value += pos.option_notional *
                         (bs_call_price(spot, pos.strike, pos.expiry_tau, rate, q, vol) - price0);
            }
            pnl[k] += value;
        }
    }
    return pnl;
}

double SweepReport::median_nu() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.nu);
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double SweepReport::mean_nu() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (const auto& r : rows) s += r.nu;
    return s / static_cast<double>(rows.size());
}

double SweepReport::stdev_nu() const {
    if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean_nu();
    double s = 0.0;
    for (const auto& r : rows) s += (r.nu - m) * (r.nu - m);
    return std::sqrt(s / static_cast<double>(rows.size() - 1));
}

double SweepReport::non_convergence_fraction() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto count = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) {
        return r.regime == Regime::non_convergence;
    });
    return static_cast<double>(count) / static_cast<double>(rows.size());
}

std::vector<double> draw_weights(std::mt19937_64& rng, std::size_t n_assets) {
    std::vector<double> w(n_assets);
    for (double& x : w) {
        do {
            x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        } while (x == 0.0);
    }
    return w;
}

SweepReport random_weight_sweep(const MarketHistory& history, std::size_t n_repeats,
                                std::uint64_t seed, const SweepOptions& options) {
    validate(history);
    require(n_repeats >= 1, ErrorKind::invalid_params, "random_weight_sweep: need at least one repeat");
    SweepReport report;
    report.seed = seed;
    report.n_repeats = n_repeats;
    report.options = options;
    if (report.options.as_of == static_cast<std::size_t>(-1)) {
        report.options.as_of = history.n_days() - 1;
    }
    require(report.options.as_of < history.n_days() && report.options.as_of >= options.window,
            ErrorKind::insufficient_history,
            "random_weight_sweep: the as-of date needs a full window of prior observations");
    report.nu_star = critical_nu(options.alpha, options.horizon);

    std::mt19937_64 rng(seed);
    for (std::size_t rep = 0; rep < n_repeats; ++rep) {
        // Draw first so a failed repeat does not shift later weights.
        std::vector<double> weights = draw_weights(rng, history.n_assets());
        try {
            const Portfolio p = build_portfolio(history, report.options.as_of, weights, options.window);
            const EmpiricalSample sample(historical_pnl(p, history, options.window));
            const FitResult normal = fit_normal(sample);
            const FitResult st = fit_cdf_mse(sample, Family::student_t);
            const FitResult vg = fit_cdf_mse(sample, Family::variance_gamma);

            StudentTParams st_day = std::get<StudentTParams>(st.params);
            st_day.mu = 0.0;
            const double var_st = st_convolution_var(st_day, options.alpha, options.horizon);
            const double var_n = matched_normal_var(
                0.0, std::get<NormalParams>(normal.params).sigma2, options.alpha, options.horizon);

            SweepRow row;
            row.repeat = rep;
            row.weights = std::move(weights);
            row.nu = st_day.nu;
            row.mse_normal = normal.mse;
            row.mse_st = st.mse;
            row.mse_vg = vg.mse;
            row.var_ratio = var_st / var_n;
            row.regime = row.nu >= report.nu_star ? Regime::convergence : Regime::non_convergence;
            report.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            report.failures.push_back({rep, e.what()});
        }
    }
    return report;
}

void validate(const SynthSpec& s) {
    auto check = [](bool ok, const char* what) {
        if (!ok) fail(ErrorKind::invalid_spec, std::string("SynthSpec: ") + what);
    };
    check(s.n_assets >= 1, "n_assets must be positive");
    check(s.return_family != Family::variance_gamma, "return family must be normal or student_t");
    check(s.return_family != Family::student_t || (std::isfinite(s.nu) && s.nu > 2.0),
          "nu must exceed 2");
    check(std::isfinite(s.daily_return_sd) && s.daily_return_sd >= 0.0,
          "daily_return_sd must be non-negative");
    check(s.correlation >= 0.0 && s.correlation <= 1.0, "correlation must lie in [0, 1]");
    check(std::isfinite(s.initial_spot) && s.initial_spot > 0.0, "initial_spot must be positive");
    check(std::isfinite(s.initial_vol) && s.initial_vol > 0.0, "initial_vol must be positive");
    check(std::isfinite(s.vol_of_vol) && s.vol_of_vol >= 0.0, "vol_of_vol must be non-negative");
    check(s.vol_mean_reversion >= 0.0 && s.vol_mean_reversion <= 1.0,
          "vol_mean_reversion must lie in [0, 1]");
    check(s.spot_vol_correlation >= -1.0 && s.spot_vol_correlation <= 1.0,
          "spot_vol_correlation must lie in [-1, 1]");
    check(std::isfinite(s.rate) && std::isfinite(s.rate_vol) && s.rate_vol >= 0.0,
          "rate and rate_vol must be finite, rate_vol non-negative");
    check(std::isfinite(s.dividend_yield) && std::isfinite(s.skew), "dividend_yield and skew must be finite");
}

MarketHistory synth_history(const SynthSpec& spec, std::size_t days, std::uint64_t seed) {
    validate(spec);
    if (days < 2) fail(ErrorKind::invalid_spec, "synth_history: need at least two days");

    MarketHistory h;
    h.dividend_yield = spec.dividend_yield;
    h.skew = spec.skew;
    for (std::size_t a = 0; a < spec.n_assets; ++a) {
        char name[16];
        std::snprintf(name, sizeof name, "ASSET%02zu", a + 1);
        h.assets.emplace_back(name);
    }
    h.dates.reserve(days);
    for (std::size_t d = 0; d < days; ++d) h.dates.push_back(business_date(d));
    h.spots.assign(spec.n_assets, std::vector<double>(days));
    h.atm_vols.assign(spec.n_assets, std::vector<double>(days));
    h.rates.assign(days, spec.rate);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const bool fat = spec.return_family == Family::student_t;
    std::chi_squared_distribution<double> chi2(fat ? spec.nu : 1.0);
    // Unit-variance t draws come from z * sqrt((nu - 2) / chi2).
    const double t_scale = fat ? std::sqrt(spec.nu - 2.0) : 1.0;
    const double load = std::sqrt(spec.correlation);
    const double idio = std::sqrt(1.0 - spec.correlation);
    const double rho_sv = spec.spot_vol_correlation;
    const double rho_perp = std::sqrt(1.0 - rho_sv * rho_sv);
    const double log_vol0 = std::log(spec.initial_vol);

    std::vector<double> log_vol(spec.n_assets, log_vol0);
    for (std::size_t a = 0; a < spec.n_assets; ++a) {
        h.spots[a][0] = spec.initial_spot;
        // Same expression as later days so frozen vols stay bitwise constant.
        h.atm_vols[a][0] = std::exp(log_vol0);
    }
    for (std::size_t d = 1; d < days; ++d) {
        const double mix = fat ? t_scale / std::sqrt(chi2(rng)) : 1.0;
        const double f_ret = gauss(rng);
        const double f_vol = gauss(rng);
        for (std::size_t a = 0; a < spec.n_assets; ++a) {
            const double z_ret = load * f_ret + idio * gauss(rng);
            const double z_other = load * f_vol + idio * gauss(rng);
            const double z_vol = rho_sv * z_ret + rho_perp * z_other;
            const double r = spec.daily_return_sd * mix * z_ret;
            h.spots[a][d] = h.spots[a][d - 1] * std::exp(r);
            log_vol[a] += spec.vol_mean_reversion * (log_vol0 - log_vol[a]) +
                          spec.vol_of_vol * mix * z_vol;
            h.atm_vols[a][d] = std::exp(log_vol[a]);
        }
        h.rates[d] = h.rates[d - 1] + spec.rate_vol * gauss(rng);
    }
    return h;
}

}  // namespace varscale
