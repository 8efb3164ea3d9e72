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

#ifndef VARSCALE_PORTFOLIO_HPP_
#define VARSCALE_PORTFOLIO_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "varscale/convergence.hpp"
#include "varscale/distributions.hpp"

namespace varscale {

/// Implied volatilities on an absolute strike x tenor lattice, bilinear in
/// between and flat beyond the edges (sticky strike).
class VolSurface {
public:
    /// `vols` is row-major: vols[i * tenors.size() + j] belongs to
    /// (strikes[i], tenors[j]). Both axes strictly increasing.
    VolSurface(std::vector<double> strikes, std::vector<double> tenors, std::vector<double> vols);

    /// Surface around `spot` with vol(K) = atm_vol * (1 + skew * ln(K / spot)),
    /// floored at 1% of atm_vol, and no term structure.
    static VolSurface from_atm(double spot, double atm_vol, double skew);

    double vol(double strike, double tenor) const;
    /// Copy with every node multiplied by `factor` (> 0).
    VolSurface scaled(double factor) const;

    const std::vector<double>& strikes() const noexcept { return strikes_; }
    const std::vector<double>& tenors() const noexcept { return tenors_; }

private:
    std::vector<double> strikes_;
    std::vector<double> tenors_;
    std::vector<double> vols_;
};

/// Daily market data on a common date axis. Series are indexed
/// [asset][day].
struct MarketHistory {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    std::vector<std::vector<double>> spots;
    std::vector<std::vector<double>> atm_vols;
    /// 3-month funding rate, annualised decimal.
    std::vector<double> rates;
    double dividend_yield = 0.03;
    /// Slope of the smile in log-moneyness used to build surfaces.
    double skew = 0.0;

    std::size_t n_days() const noexcept { return dates.size(); }
    std::size_t n_assets() const noexcept { return assets.size(); }
};

/// Throws Error(misaligned_history) when series lengths disagree and
/// Error(invalid_params) for non-positive spots or vols.
void validate(const MarketHistory& history);

inline constexpr std::size_t kDefaultWindow = 500;
inline constexpr double kOptionTenor = 0.25;

struct Position {
    std::size_t asset = 0;
    /// Long calls.
    double option_notional = 0.0;
    /// Shares sold short.
    double hedge_shares = 0.0;
    double strike = 0.0;
    double expiry_tau = kOptionTenor;
    double weight = 0.0;
};

struct Portfolio {
    std::size_t as_of = 0;
    std::vector<Position> positions;
};

/// Delta-hedged ATM 3-month calls: per asset, weight / spot calls struck at
/// the as-of spot and notional * delta shares short. Requires `window` prior
/// observations (Error(insufficient_history) otherwise).
Portfolio build_portfolio(const MarketHistory& history, std::size_t as_of,
                          std::span<const double> weights, std::size_t window = kDefaultWindow);

/// One-day P&L under each of the `window` historical shocks ending at the
/// as-of date: relative spot shock, one relative shock to the whole vol
/// surface, absolute rate shock. Options are repriced at their fixed tenor.
std::vector<double> historical_pnl(const Portfolio& portfolio, const MarketHistory& history,
                                   std::size_t window = kDefaultWindow);

struct SweepOptions {
    double alpha = 7e-4;
    int horizon = 250;
    std::size_t window = kDefaultWindow;
    /// Defaults to the last day of the history.
    std::size_t as_of = static_cast<std::size_t>(-1);
};

struct SweepRow {
    std::size_t repeat = 0;
    std::vector<double> weights;
    double nu = 0.0;
    double mse_normal = 0.0;
    double mse_st = 0.0;
    double mse_vg = 0.0;
    /// Convolution VaR of the zero-mean t fit over the SRTR VaR of the
    /// zero-mean moment-matched Normal, both at the sweep horizon.
    double var_ratio = 0.0;
    Regime regime = Regime::convergence;
};

struct SweepFailure {
    std::size_t repeat = 0;
    std::string message;
};

struct SweepReport {
    std::uint64_t seed = 0;
    std::size_t n_repeats = 0;
    SweepOptions options;
    double nu_star = 0.0;
    std::vector<SweepRow> rows;
    std::vector<SweepFailure> failures;

    double median_nu() const;
    double mean_nu() const;
    double stdev_nu() const;
    /// Fraction of successful repeats classified as non-convergence.
    double non_convergence_fraction() const;
};

/// Uniform(0, 1) weights, 53 bits per 64-bit draw, exact zeros rejected.
/// Unlike std::uniform_real_distribution this is identical on every
/// standard library.
std::vector<double> draw_weights(std::mt19937_64& rng, std::size_t n_assets);

/// Repeats: draw weights, build the portfolio, compute historical P&L, fit
/// the three families, classify the t fit and compute the VaR ratio. Failed
/// repeats are recorded and skipped. Deterministic given the seed.
SweepReport random_weight_sweep(const MarketHistory& history, std::size_t n_repeats,
                                std::uint64_t seed, const SweepOptions& options = {});

/// Synthetic market generator. Daily log-returns are multivariate t (or
/// Normal) with one-factor correlation, scaled to `daily_return_sd`. Log
/// implied vols mean-revert to `initial_vol` with shocks that share the
/// return's mixing variable, so vol moves have the same tail index.
struct SynthSpec {
    std::size_t n_assets = 10;
    Family return_family = Family::student_t;
    double nu = 3.0;
    double daily_return_sd = 0.01;
    double correlation = 0.3;
    double initial_spot = 100.0;
    double initial_vol = 0.2;
    /// Daily sd of log-vol shocks; zero freezes vols.
    double vol_of_vol = 0.0;
    double vol_mean_reversion = 0.02;
    /// Correlation between an asset's return and vol shocks.
    double spot_vol_correlation = -0.5;
    double rate = 0.01;
    /// Daily sd of absolute rate changes.
    double rate_vol = 0.0;
    double dividend_yield = 0.03;
    double skew = 0.0;
};

/// Throws Error(invalid_spec) for out-of-range fields.
void validate(const SynthSpec& spec);

MarketHistory synth_history(const SynthSpec& spec, std::size_t days, std::uint64_t seed);

}  // namespace varscale

#endif  // VARSCALE_PORTFOLIO_HPP_
