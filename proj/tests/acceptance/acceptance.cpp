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

// One line per acceptance criterion: "[PASS] ACn ..." or "[FAIL] ACn ...".
// With arguments, only the named criteria run. Exit status is nonzero if
// any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "varscale/black_scholes.hpp"
#include "varscale/convergence.hpp"
#include "varscale/convolution.hpp"
#include "varscale/distributions.hpp"
#include "varscale/portfolio.hpp"
#include "varscale/riskmeasure.hpp"

namespace {

using namespace varscale;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Outcome ac1() {
    const double nu = critical_nu(7e-4, 250.0);
    return {std::fabs(nu - 3.41) <= 0.01,
            format("nu*(7e-4, 250) = %.6f, target 3.41 +- 0.01", nu)};
}

Outcome ac2() {
    const NormalParams normal{0.0, 5.0, 1.0};
    const StudentTParams st{0.0, std::sqrt(5.0 / 3.0), 3.0};
    const VGParams vg{0.0, std::sqrt(5.0), 0.0, 0.5, 1.0};
    const double vg_n = bisect([&](double x) { return cumulative(vg, x) - cumulative(normal, x); }, -4.5, -3.0);
    const double st_vg = bisect([&](double x) { return cumulative(st, x) - cumulative(vg, x); }, -7.0, -5.0);
    return {std::fabs(vg_n + 3.750) <= 0.01 && std::fabs(st_vg + 5.718) <= 0.01,
            format("VG/N crossing %.4f (target -3.750), ST/VG crossing %.4f (target -5.718), tol 0.01",
                   vg_n, st_vg)};
}

Outcome ac3() {
    bool pass = true;
    std::string detail = "|reldiff| at nu*(alpha), n=250:";
    for (double a : {1e-4, 3e-4, 7e-4, 1e-3}) {
        const double r = appendix_a_reldiff(a);
        pass = pass && std::fabs(r) <= 0.05;
        detail += format(" %.0e->%.4f", a, r);
    }
    return {pass, detail + " (limit 0.05)"};
}

Outcome ac4() {
    const VGParams day{0.0, 1.0, 0.0, 0.5, 1.0};
    const double at4 = vg_normal_reldiff(day, 50, 4.0);
    bool ordered = true;
    double worst_gap = -1.0;
    for (int i = 0; i <= 12; ++i) {
        const double x = 2.0 + 0.25 * i;
        const double r50 = vg_normal_reldiff(day, 50, x);
        const double r250 = vg_normal_reldiff(day, 250, x);
        ordered = ordered && r250 <= r50;
        worst_gap = std::max(worst_gap, r250 - r50);
    }
    return {at4 < 0.02 && ordered,
            format("n=50 reldiff at 4 sd = %.4f (limit 0.02); n=250 below n=50 on [2,5]: %s "
                   "(max r250-r50 = %.3g)",
                   at4, ordered ? "yes" : "no", worst_gap)};
}

Outcome ac5() {
    const NormalParams one{0.0, 1.0, 1.0};
    const DensityGrid g = convolve_n_fft(discretize(one, 250, default_tail_sigmas(Family::normal)), 250);
    const NormalParams year = normal_srtr(one, 250);
    double worst = 0.0;
    for (double p : {7e-4, 0.01}) {
        const double want = quantile(year, p);
        worst = std::max(worst, std::fabs(grid_quantile(g, p) - want) / std::fabs(want));
    }
    // The median is zero; scale its error by the horizon standard deviation.
    const double median_err = std::fabs(grid_quantile(g, 0.5)) / std::sqrt(250.0);
    const DensityGrid cauchy =
        convolve_n_fft(discretize_range(StudentTParams{0.0, 1.0, 1.0}, -2.0e4, 2.0e4, std::size_t{1} << 21, 10), 10);
    const double q75 = grid_quantile(cauchy, 0.75);
    const double cauchy_err = std::fabs(q75 - 10.0) / 10.0;
    return {worst <= 1e-4 && median_err <= 1e-4 && cauchy_err <= 0.005,
            format("Normal 250-fold max rel err %.2e, median err/sd %.2e (limit 1e-4); "
                   "Cauchy 10-fold q75 = %.5f, rel err %.2e (limit 5e-3)",
                   worst, median_err, q75, cauchy_err)};
}

Outcome ac6() {
    const VGParams p{0.0, 1.0, 0.0, 0.5, 1.0};
    const DensityGrid g = convolve_n_fft(discretize(p, 50, default_tail_sigmas(Family::variance_gamma)), 50);
    const VGParams q = vg_convolve_analytic(p, 50);
    double worst = 0.0;
    for (double a : {7e-4, 0.01}) {
        const double want = quantile(q, a);
        worst = std::max(worst, std::fabs(grid_quantile(g, a) - want) / std::fabs(want));
    }
    return {worst <= 1e-3, format("max rel diff %.2e (limit 1e-3)", worst)};
}

// Empirical quantile of `sums` and its standard error from the grid density.
Outcome mc_check(const char* name, std::vector<double> sums, const DensityGrid& grid) {
    bool pass = true;
    std::string detail = name;
    const double n = static_cast<double>(sums.size());
    for (double p : {0.01, 0.05}) {
        const auto k = static_cast<std::size_t>(std::floor(p * n));
        std::nth_element(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(k), sums.end());
        const double empirical = sums[k];
        const double q = grid_quantile(grid, p);
        const auto cell = static_cast<std::size_t>((q - grid.x_min) / grid.dx);
        const double f = grid.weights[cell] / grid.dx;
        const double se = std::sqrt(p * (1.0 - p) / n) / f;
        const double z = (q - empirical) / se;
        pass = pass && std::fabs(z) <= 3.0;
        detail += format(" p=%.2f fft=%.4f mc=%.4f z=%.2f;", p, q, empirical, z);
    }
    return {pass, detail};
}

Outcome ac7() {
    constexpr std::size_t paths = 10'000'000;
    constexpr int steps = 20;

    const StudentTParams st{0.0, 1.0, 3.0};
    std::vector<double> st_sums(paths);
    {
        std::mt19937_64 rng(20140211);
        std::student_t_distribution<double> t(st.nu);
        for (double& s : st_sums) {
            double acc = 0.0;
            for (int i = 0; i < steps; ++i) acc += t(rng);
            s = acc;
        }
    }
    const DensityGrid st_grid =
        convolve_n_fft(discretize(st, steps, default_tail_sigmas(Family::student_t)), steps);
    const Outcome a = mc_check("ST(3):", std::move(st_sums), st_grid);

    const VGParams vg{0.0, 1.0, 0.0, 0.5, 1.0};
    std::vector<double> vg_sums(paths);
    {
        std::mt19937_64 rng(20140212);
        std::gamma_distribution<double> clock(1.0 / vg.k, vg.k);
        std::normal_distribution<double> z;
        for (double& s : vg_sums) {
            double acc = 0.0;
            for (int i = 0; i < steps; ++i) acc += vg.sigma * std::sqrt(clock(rng)) * z(rng);
            s = acc;
        }
    }
    const DensityGrid vg_grid =
        convolve_n_fft(discretize(vg, steps, default_tail_sigmas(Family::variance_gamma)), steps);
    const Outcome b = mc_check(" VG(0.5):", std::move(vg_sums), vg_grid);
    return {a.pass && b.pass, a.detail + b.detail + " limit |z| <= 3, 1e7 paths"};
}

Outcome ac8() {
    const std::vector<double> nus = {2.2, 2.5, 3.0, 3.41, 5.0, 10.0};
    const auto curve = var_ratio_curve(nus, 7e-4, 250);
    bool monotone = true;
    bool near_one = true;
    std::string detail = "ratios:";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        detail += format(" %.2f->%.4f", curve[i].first, curve[i].second);
        if (i > 0 && curve[i].second > curve[i - 1].second) monotone = false;
        if (curve[i].first >= 3.41 && std::fabs(curve[i].second - 1.0) > 0.05) near_one = false;
    }
    const bool amplified = curve.front().second > 2.0;
    detail += format("; nonincreasing %s, within 5%% for nu>=3.41 %s, >2 at 2.2 %s",
                     monotone ? "yes" : "no", near_one ? "yes" : "no", amplified ? "yes" : "no");
    return {monotone && near_one && amplified, detail};
}

Outcome ac9() {
    bool pass = true;
    std::string detail;
    for (double nu : {2.5, 3.0}) {
        const StudentTParams st{0.0, 1.0, nu};
        const double srtr = -quantile(st, 7e-4) * std::sqrt(250.0);
        const double conv = st_convolution_var(st, 7e-4, 250);
        const double normal = matched_normal_var(0.0, variance(st), 7e-4, 250);
        pass = pass && srtr > conv && conv >= normal;
        detail += format("nu=%.1f: %.3f > %.3f >= %.3f; ", nu, srtr, conv, normal);
    }
    return {pass, detail + "(SRTR 1d > conv 250d >= matched Normal 250d)"};
}

Outcome ac10() {
    double parity = 0.0;
    for (double s : {50.0, 100.0, 150.0})
        for (double k : {80.0, 100.0, 120.0})
            for (double tau : {0.05, 0.25, 2.0})
                for (double r : {0.0, 0.05})
                    for (double q : {0.0, 0.03})
                        for (double vol : {0.05, 0.2, 0.8}) {
                            const double lhs = bs_call_price(s, k, tau, r, q, vol) - bs_put_price(s, k, tau, r, q, vol);
                            parity = std::max(parity, std::fabs(lhs - (s * std::exp(-q * tau) - k * std::exp(-r * tau))));
                        }
    const double atm = bs_call_price(100, 100, 0.25, 0, 0, 0.2);
    double delta_err = 0.0;
    for (double s : {70.0, 100.0, 130.0})
        for (double vol : {0.1, 0.3}) {
            const double h = 1e-4 * s;
            const double fd = (bs_call_price(s + h, 100, 0.25, 0.01, 0.03, vol) -
                               bs_call_price(s - h, 100, 0.25, 0.01, 0.03, vol)) / (2 * h);
            delta_err = std::max(delta_err, std::fabs(fd - bs_delta(s, 100, 0.25, 0.01, 0.03, vol)));
        }
    return {parity <= 1e-10 && std::fabs(atm - 3.9878) <= 1e-4 && delta_err <= 1e-6,
            format("parity max err %.1e (limit 1e-10); ATM call %.6f (target 3.9878 +- 1e-4); "
                   "delta FD max err %.1e (limit 1e-6)",
                   parity, atm, delta_err)};
}

Outcome ac11() {
    SynthSpec spec;
    spec.return_family = Family::student_t;
    spec.nu = 3.0;
    spec.vol_of_vol = 0.05;
    const MarketHistory history = synth_history(spec, 501, 20140211);
    constexpr std::size_t repeats = 200;
    constexpr std::uint64_t seed = 7;
    const SweepReport report = random_weight_sweep(history, repeats, seed);
    const double median = report.median_nu();
    const double frac = report.non_convergence_fraction();
    const std::size_t non_conv = static_cast<std::size_t>(std::lround(frac * report.rows.size()));

    // Bitwise rerun of the leading repeats with the same seed.
    const SweepReport again = random_weight_sweep(history, 10, seed);
    bool same = again.rows.size() <= report.rows.size();
    for (std::size_t i = 0; same && i < again.rows.size(); ++i) {
        const SweepRow& x = report.rows[i];
        const SweepRow& y = again.rows[i];
        same = x.repeat == y.repeat && x.weights == y.weights && x.nu == y.nu &&
               x.mse_normal == y.mse_normal && x.mse_st == y.mse_st && x.mse_vg == y.mse_vg &&
               x.var_ratio == y.var_ratio && x.regime == y.regime;
    }
    const bool majority = 2 * non_conv > report.rows.size();
    return {median >= 2.6 && median <= 3.6 && majority && same,
            format("%zu/%zu repeats ok; median nu %.3f (range [2.6, 3.6]); NonConvergence %zu "
                   "(%.1f%%, strict majority needed) at nu*=%.3f; rerun bitwise identical: %s",
                   report.rows.size(), repeats, median, non_conv, 100.0 * frac, report.nu_star,
                   same ? "yes" : "no")};
}

struct Criterion {
    const char* id;
    const char* title;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"AC1", "critical nu anchor", ac1},
    {"AC2", "CDF crossings", ac2},
    {"AC3", "convolution vs matched Normal band", ac3},
    {"AC4", "VG convergence", ac4},
    {"AC5", "FFT vs closed forms", ac5},
    {"AC6", "VG analytic vs FFT", ac6},
    {"AC7", "Monte-Carlo oracle", ac7},
    {"AC8", "fat-tail amplification", ac8},
    {"AC9", "sub square-root scaling", ac9},
    {"AC10", "pricing harness", ac10},
    {"AC11", "end-to-end sweep", ac11},
};

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    std::set<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!wanted.empty() && wanted.count(c.id) == 0) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
