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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "varscale/black_scholes.hpp"
#include "varscale/error.hpp"
#include "varscale/fitting.hpp"
#include "varscale/portfolio.hpp"
#include "varscale/riskmeasure.hpp"

namespace varscale {
namespace {

MarketHistory flat_history(std::size_t assets, std::size_t days) {
    MarketHistory h;
    for (std::size_t d = 0; d < days; ++d) h.dates.push_back("d" + std::to_string(d));
    for (std::size_t a = 0; a < assets; ++a) {
        h.assets.push_back("A" + std::to_string(a));
        h.spots.emplace_back(days, 100.0);
        h.atm_vols.emplace_back(days, 0.2);
    }
    h.rates.assign(days, 0.01);
    return h;
}

std::vector<double> log_returns(const std::vector<double>& spots) {
    std::vector<double> r;
    for (std::size_t i = 1; i < spots.size(); ++i) r.push_back(std::log(spots[i] / spots[i - 1]));
    return r;
}

TEST(VolSurface, BilinearAndFlat) {
    const VolSurface s({90.0, 110.0}, {0.25, 1.0}, {0.2, 0.3, 0.4, 0.5});
    EXPECT_DOUBLE_EQ(s.vol(90.0, 0.25), 0.2);
    EXPECT_DOUBLE_EQ(s.vol(110.0, 1.0), 0.5);
    EXPECT_NEAR(s.vol(100.0, 0.625), 0.35, 1e-15);
    EXPECT_NEAR(s.vol(50.0, 0.25), 0.2, 1e-15);
    EXPECT_NEAR(s.vol(200.0, 5.0), 0.5, 1e-15);
    EXPECT_NEAR(s.scaled(2.0).vol(100.0, 0.625), 0.7, 1e-15);
    EXPECT_THROW(VolSurface({110.0, 90.0}, {0.25, 1.0}, {0.2, 0.3, 0.4, 0.5}), Error);
    EXPECT_THROW(VolSurface({90.0, 110.0}, {0.25, 1.0}, {0.2, 0.3, -0.4, 0.5}), Error);
    EXPECT_THROW(VolSurface({90.0, 110.0}, {0.25, 1.0}, {0.2, 0.3}), Error);
}

TEST(VolSurface, AtmLatticeWithSkew) {
    const VolSurface flat = VolSurface::from_atm(100.0, 0.25, 0.0);
    EXPECT_NEAR(flat.vol(73.0, 0.4), 0.25, 1e-15);
    const VolSurface skewed = VolSurface::from_atm(100.0, 0.25, -0.5);
    EXPECT_NEAR(skewed.vol(100.0, 0.25), 0.25, 1e-15);
    EXPECT_GT(skewed.vol(80.0, 0.25), skewed.vol(120.0, 0.25));
}

TEST(History, Validation) {
    MarketHistory h = flat_history(2, 10);
    EXPECT_NO_THROW(validate(h));
    h.rates.pop_back();
    EXPECT_THROW(validate(h), Error);
    h = flat_history(2, 10);
    h.spots[1][3] = 0.0;
    EXPECT_THROW(validate(h), Error);
}

TEST(BuildPortfolio, HedgedAtInception) {
    MarketHistory h = flat_history(3, 520);
    h.spots[1].back() = 87.0;
    h.atm_vols[2].back() = 0.35;
    const std::vector<double> w = {0.2, 0.5, 1.0};
    const Portfolio p = build_portfolio(h, 519, w);
    ASSERT_EQ(p.positions.size(), 3u);
    for (const Position& pos : p.positions) {
        const double spot = h.spots[pos.asset][519];
        EXPECT_EQ(pos.strike, spot);
        EXPECT_EQ(pos.expiry_tau, 0.25);
        EXPECT_DOUBLE_EQ(pos.option_notional, w[pos.asset] / spot);
        const double delta = bs_delta(spot, spot, 0.25, 0.01, 0.03, h.atm_vols[pos.asset][519]);
        const double net = pos.option_notional * delta - pos.hedge_shares;
        EXPECT_LT(std::fabs(net), 1e-10 * pos.option_notional);
        EXPECT_NEAR(delta, 0.5, 0.05);
    }
}

TEST(BuildPortfolio, Errors) {
    const MarketHistory h = flat_history(2, 520);
    const std::vector<double> w = {0.5, 0.5};
    EXPECT_THROW(build_portfolio(h, 499, w), Error);
    try {
        build_portfolio(h, 100, w);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::insufficient_history);
    }
    const std::vector<double> zero = {0.0, 0.5};
    EXPECT_THROW(build_portfolio(h, 519, zero), Error);
    const std::vector<double> short_w = {0.5};
    EXPECT_THROW(build_portfolio(h, 519, short_w), Error);
}

TEST(HistoricalPnl, ZeroShocksGiveZero) {
    const MarketHistory h = flat_history(2, 501);
    const std::vector<double> w = {0.3, 0.9};
    const auto pnl = historical_pnl(build_portfolio(h, 500, w), h);
    ASSERT_EQ(pnl.size(), 500u);
    for (double x : pnl) EXPECT_EQ(x, 0.0);
}

TEST(HistoricalPnl, LinearSharePosition) {
    MarketHistory h = flat_history(1, 501);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z(0.0, 0.01);
    for (std::size_t d = 1; d < 501; ++d) h.spots[0][d] = h.spots[0][d - 1] * std::exp(z(rng));
    Portfolio p;
    p.as_of = 500;
    Position pos;
    pos.hedge_shares = -0.7;  // long 0.7 shares
    p.positions.push_back(pos);
    const auto pnl = historical_pnl(p, h);
    const double s0 = h.spots[0][500];
    for (std::size_t k = 0; k < pnl.size(); ++k) {
        const std::size_t d = k + 1;
        const double r = h.spots[0][d] / h.spots[0][d - 1] - 1.0;
        ASSERT_NEAR(pnl[k], 0.7 * s0 * r, 1e-12);
    }
}

// Days 1..500 alternate +eps and -eps spot shocks, vols and rates frozen.
TEST(HistoricalPnl, HedgedOptionIsLongGamma) {
    for (double eps : {0.01, 0.002}) {
        MarketHistory h = flat_history(1, 501);
        for (std::size_t d = 1; d < 501; ++d) h.spots[0][d] = 100.0 * (d % 2 == 1 ? 1.0 + eps : 1.0);
        const std::vector<double> w = {1.0};
        const Portfolio p = build_portfolio(h, 500, w);
        const auto pnl = historical_pnl(p, h);
        // Day 500 closes at 100, so shocks are +eps on odd days and
        // 1/(1+eps) - 1 on even days.
        const double up = pnl[0];    // day 1: +eps
        const double down = pnl[1];  // day 2: -eps/(1+eps)
        EXPECT_GT(up, 0.0);
        EXPECT_GT(down, 0.0);
        const Position& pos = p.positions[0];
        const double gamma = bs_gamma(100.0, 100.0, 0.25, 0.01, 0.03, 0.2);
        const double ds = 100.0 * eps;
        EXPECT_NEAR(up, 0.5 * pos.option_notional * gamma * ds * ds, 0.2 * up);
    }
}

TEST(HistoricalPnl, EvenDominantForSymmetricShocks) {
    for (double eps : {0.01, 0.005, 0.001}) {
        // Day 1 shocks by +eps, day 2 by -eps, then the market is flat.
        MarketHistory h = flat_history(1, 501);
        h.spots[0][1] = 100.0 * (1.0 + eps);
        for (std::size_t d = 2; d < 501; ++d) h.spots[0][d] = h.spots[0][1] * (1.0 - eps);
        const std::vector<double> w = {1.0};
        const auto pnl = historical_pnl(build_portfolio(h, 500, w), h);
        const double plus = pnl[0];
        const double minus = pnl[1];
        EXPECT_LE(std::fabs(plus - minus), 0.1 * std::fabs(plus + minus)) << eps;
    }
}

TEST(HistoricalPnl, EqualWeightsOnIdenticalAssets) {
    SynthSpec spec;
    spec.n_assets = 1;
    const MarketHistory one = synth_history(spec, 501, 5);
    MarketHistory two = one;
    two.assets.push_back("copy");
    two.spots.push_back(one.spots[0]);
    two.atm_vols.push_back(one.atm_vols[0]);
    const std::vector<double> w1 = {0.4};
    const std::vector<double> w2 = {0.4, 0.4};
    const auto single = historical_pnl(build_portfolio(one, 500, w1), one);
    const auto both = historical_pnl(build_portfolio(two, 500, w2), two);
    for (std::size_t k = 0; k < single.size(); ++k) ASSERT_NEAR(both[k], 2.0 * single[k], 1e-15);
}

TEST(Synth, NormalReturnsHaveNormalKurtosis) {
    SynthSpec spec;
    spec.n_assets = 1;
    spec.return_family = Family::normal;
    const MarketHistory h = synth_history(spec, 100001, 17);
    const auto r = log_returns(h.spots[0]);
    double m = 0.0;
    for (double x : r) m += x;
    m /= r.size();
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : r) {
        m2 += (x - m) * (x - m);
        m4 += std::pow(x - m, 4);
    }
    m2 /= r.size();
    m4 /= r.size();
    // Standard error of the sample kurtosis is sqrt(24 / n) ~ 0.015.
    EXPECT_NEAR(m4 / (m2 * m2), 3.0, 0.08);
    EXPECT_NEAR(std::sqrt(m2), spec.daily_return_sd, 1e-4);
}

TEST(Synth, StudentReturnsRecoverNu) {
    SynthSpec spec;
    spec.n_assets = 1;
    const MarketHistory h = synth_history(spec, 100001, 23);
    const FitResult f = fit_cdf_mse(EmpiricalSample(log_returns(h.spots[0])), Family::student_t);
    const double nu = std::get<StudentTParams>(f.params).nu;
    EXPECT_GE(nu, 2.7);
    EXPECT_LE(nu, 3.3);
}

TEST(Synth, FrozenVolsAndDeterminism) {
    SynthSpec spec;
    spec.n_assets = 3;
    const MarketHistory a = synth_history(spec, 600, 99);
    for (const auto& series : a.atm_vols)
        for (double v : series) ASSERT_EQ(v, spec.initial_vol);
    for (double r : a.rates) ASSERT_EQ(r, spec.rate);
    const MarketHistory b = synth_history(spec, 600, 99);
    EXPECT_EQ(a.spots, b.spots);
    EXPECT_EQ(a.dates, b.dates);
    const MarketHistory c = synth_history(spec, 600, 100);
    EXPECT_NE(a.spots, c.spots);
    EXPECT_EQ(a.dates.front(), "2010-01-04");
    EXPECT_EQ(a.dates[5], "2010-01-11");

    spec.vol_of_vol = 0.05;
    const MarketHistory moving = synth_history(spec, 600, 99);
    EXPECT_NE(moving.atm_vols[0].front(), moving.atm_vols[0].back());
    for (double v : moving.atm_vols[0]) EXPECT_GT(v, 0.0);
}

TEST(Synth, InvalidSpec) {
    SynthSpec spec;
    spec.nu = 2.0;
    EXPECT_THROW(validate(spec), Error);
    spec = SynthSpec{};
    spec.correlation = 1.5;
    EXPECT_THROW(synth_history(spec, 600, 1), Error);
    spec = SynthSpec{};
    spec.n_assets = 0;
    try {
        validate(spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_spec);
    }
}

TEST(Sweep, SingleRepeatMatchesManualPipeline) {
    SynthSpec spec;
    spec.n_assets = 3;
    const MarketHistory h = synth_history(spec, 501, 4);
    const SweepReport report = random_weight_sweep(h, 1, 77);
    ASSERT_EQ(report.rows.size(), 1u);
    ASSERT_TRUE(report.failures.empty());

    std::mt19937_64 rng(77);
    const std::vector<double> w = draw_weights(rng, 3);
    EXPECT_EQ(report.rows[0].weights, w);
    const EmpiricalSample sample(historical_pnl(build_portfolio(h, 500, w), h));
    const FitResult st = fit_cdf_mse(sample, Family::student_t);
    const FitResult n = fit_normal(sample);
    EXPECT_EQ(report.rows[0].nu, std::get<StudentTParams>(st.params).nu);
    EXPECT_EQ(report.rows[0].mse_st, st.mse);
    EXPECT_EQ(report.rows[0].mse_normal, n.mse);
    EXPECT_EQ(report.rows[0].mse_vg, fit_cdf_mse(sample, Family::variance_gamma).mse);
    StudentTParams day = std::get<StudentTParams>(st.params);
    day.mu = 0.0;
    const double ratio = st_convolution_var(day, 7e-4, 250) /
                         matched_normal_var(0.0, std::get<NormalParams>(n.params).sigma2, 7e-4, 250);
    EXPECT_EQ(report.rows[0].var_ratio, ratio);
    EXPECT_EQ(report.rows[0].regime, day.nu >= report.nu_star ? Regime::convergence : Regime::non_convergence);
}

TEST(Sweep, SameSeedSameReport) {
    SynthSpec spec;
    spec.n_assets = 2;
    const MarketHistory h = synth_history(spec, 501, 8);
    const SweepReport a = random_weight_sweep(h, 3, 5);
    const SweepReport b = random_weight_sweep(h, 3, 5);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].weights, b.rows[i].weights);
        EXPECT_EQ(a.rows[i].nu, b.rows[i].nu);
        EXPECT_EQ(a.rows[i].var_ratio, b.rows[i].var_ratio);
        EXPECT_EQ(a.rows[i].mse_vg, b.rows[i].mse_vg);
    }
    EXPECT_EQ(a.median_nu(), b.median_nu());
}

TEST(Sweep, FailuresAreRecordedNotFatal) {
    const MarketHistory h = flat_history(2, 501);
    // Flat market: zero P&L, so the sample is degenerate in every repeat.
    const SweepReport r = random_weight_sweep(h, 2, 1);
    EXPECT_TRUE(r.rows.empty());
    ASSERT_EQ(r.failures.size(), 2u);
    EXPECT_EQ(r.failures[1].repeat, 1u);
}

TEST(DrawWeights, OpenUnitInterval) {
    std::mt19937_64 rng(1);
    const auto w = draw_weights(rng, 10000);
    double sum = 0.0;
    for (double x : w) {
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
        sum += x;
    }
    EXPECT_NEAR(sum / w.size(), 0.5, 0.01);
}

}  // namespace
}  // namespace varscale
