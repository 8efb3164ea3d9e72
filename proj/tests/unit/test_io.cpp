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

#include <filesystem>

#include <gtest/gtest.h>

#include "varscale/error.hpp"
#include "varscale/io.hpp"

namespace varscale {
namespace {

ErrorKind kind_of(auto&& call) {
    try {
        call();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::invalid_params;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "varscale_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

TEST(PnlCsv, HeaderBlanksAndSigns) {
    const auto v = io::parse_pnl_csv("pnl\n1.5\n\n-2e-3\r\n+4\n");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0], 1.5);
    EXPECT_EQ(v[1], -2e-3);
    EXPECT_EQ(v[2], 4.0);
    EXPECT_EQ(io::parse_pnl_csv("0.25\n1").size(), 2u);
}

TEST(PnlCsv, Errors) {
    EXPECT_EQ(kind_of([] { io::parse_pnl_csv("x\n1\nabc\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { io::parse_pnl_csv("1\n2,3\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { io::parse_pnl_csv("1\nnan\n"); }), ErrorKind::parse_error);
    try {
        io::parse_pnl_csv("h\n1\n2\nbad\n");
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    }
    EXPECT_EQ(kind_of([] { io::read_pnl_csv("/nonexistent/pnl.csv"); }), ErrorKind::parse_error);
}

TEST(AtomicWrite, ReplacesWholeFile) {
    const auto path = scratch("out.txt");
    io::write_file_atomic(path, "first version, longer\n");
    io::write_file_atomic(path, "second\n");
    EXPECT_EQ(io::read_file(path), "second\n");
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    EXPECT_EQ(kind_of([] { io::write_file_atomic("/nonexistent-dir/x.json", "{}"); }),
              ErrorKind::config_error);
}

TEST(MarketHistoryCsv, RoundTrip) {
    SynthSpec spec;
    spec.n_assets = 2;
    spec.vol_of_vol = 0.05;
    spec.rate_vol = 1e-4;
    const MarketHistory h = synth_history(spec, 30, 3);
    const MarketHistory back = io::parse_market_history(io::market_history_csv(h), io::rates_csv(h));
    EXPECT_EQ(back.dates, h.dates);
    EXPECT_EQ(back.assets, h.assets);
    EXPECT_EQ(back.spots, h.spots);
    EXPECT_EQ(back.atm_vols, h.atm_vols);
    EXPECT_EQ(back.rates, h.rates);
}

TEST(MarketHistoryCsv, AlignmentErrors) {
    const std::string rates = "date,rate\nd1,0.01\nd2,0.01\n";
    EXPECT_EQ(kind_of([&] {
                  io::parse_market_history("date,asset,spot,atm3m_vol\nd1,A,100,0.2\nd2,A,101,0.2\nd1,B,50,0.3\n",
                                           rates);
              }),
              ErrorKind::misaligned_history);
    EXPECT_EQ(kind_of([&] {
                  io::parse_market_history("d1,A,100,0.2\nd1,A,100,0.2\nd2,A,101,0.2\n", rates);
              }),
              ErrorKind::misaligned_history);
    EXPECT_EQ(kind_of([&] { io::parse_market_history("d1,A,100,0.2\nd2,A,101,0.2\n", "d1,0.01\n"); }),
              ErrorKind::misaligned_history);
    EXPECT_EQ(kind_of([&] { io::parse_market_history("d1,A,100\n", rates); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([&] { io::parse_market_history("d1,A,100,0.2\nd2,A,-1,0.2\n", rates); }),
              ErrorKind::invalid_params);
}

TEST(Json, Records) {
    FitResult f;
    f.params = StudentTParams{0.1, 2.0, 3.5};
    f.mse = 1e-5;
    f.converged = true;
    f.iterations = 42;
    const auto j = io::to_json(f);
    EXPECT_EQ(j.at("family"), "student_t");
    EXPECT_EQ(j.at("params").at("nu"), 3.5);
    EXPECT_EQ(j.at("iterations"), 42);

    const auto r = io::to_json(classify_regime(3.0, 7e-4, 250.0));
    EXPECT_EQ(r.at("regime"), "NonConvergence");
    EXPECT_GT(r.at("nu_star").get<double>(), 2.0);

    VaRFigure v;
    v.alpha = 0.01;
    v.horizon = 250;
    v.value = 36.78;
    v.method = VaRMethod::clt_normal_from_vg;
    v.one_day = VGParams{};
    const auto vj = io::to_json(v);
    EXPECT_EQ(vj.at("method"), "CLT_Normal_from_VG");
    EXPECT_EQ(vj.at("one_day_params").at("k"), 0.5);
    EXPECT_FALSE(vj.contains("nu_star"));
}

TEST(Json, SweepSummaryAndDetail) {
    SweepReport r;
    r.seed = 9;
    r.n_repeats = 3;
    r.nu_star = 3.9;
    SweepRow a;
    a.repeat = 0;
    a.nu = 2.4;
    a.regime = Regime::non_convergence;
    SweepRow b = a;
    b.repeat = 2;
    b.nu = 4.5;
    b.regime = Regime::convergence;
    r.rows = {a, b};
    r.failures = {{1, "boom"}};
    const auto j = io::to_json(r);
    EXPECT_EQ(j.at("n_succeeded"), 2);
    EXPECT_EQ(j.at("failures").size(), 1u);
    EXPECT_DOUBLE_EQ(j.at("non_convergence_fraction").get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j.at("nu_median").get<double>(), 3.45);
    const std::string csv = io::sweep_detail_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "repeat,nu,mse_N,mse_ST,mse_VG,var_ratio,regime");
    EXPECT_NE(csv.find("NonConvergence"), std::string::npos);
}

TEST(Csv, GridAndCurve) {
    const DensityGrid g = discretize(NormalParams{}, 1, 12.0, GridOptions{kMinGridCells});
    const std::string csv = io::grid_csv(g);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,weight");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(g.n_cells()) + 1);
    const std::string curve = io::curve_csv({{0.5, 2.25}, {1.0, -3.0}}, "alpha", "nu_star");
    EXPECT_EQ(curve, "alpha,nu_star\n0.5,2.25\n1,-3\n");
}

}  // namespace
}  // namespace varscale
