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

#include "varscale/convergence.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "varscale/convolution.hpp"
#include "varscale/error.hpp"
#include "varscale/special.hpp"

namespace varscale {

namespace {

constexpr double kNuLow = 2.01;
constexpr double kNuHigh = 50.0;

void check_inputs(double nu, double horizon) {
    require(std::isfinite(nu) && nu > 2.0, ErrorKind::domain_error, "degrees of freedom must exceed 2");
    require(std::isfinite(horizon) && horizon > 1.0, ErrorKind::domain_error,
            "horizon must exceed one day (ln T > 0)");
}

// log of Gamma((nu+1)/2) / (sqrt(pi) Gamma(nu/2)).
double log_tail_constant(double nu) {
    return special::log_gamma(0.5 * (nu + 1.0)) - special::log_gamma(0.5 * nu) -
           0.5 * special::log_pi;
}

double log_time_factor(double nu, double horizon) {
    return -0.5 * (nu - 2.0) * std::log(horizon) - 0.5 * nu * std::log(std::log(horizon));
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    return regime == Regime::convergence ? "Convergence" : "NonConvergence";
}

double critical_x(double sigma, double nu, double horizon) {
    check_inputs(nu, horizon);
    require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::domain_error, "sigma must be positive");
    return sigma * std::sqrt(nu) * std::sqrt(horizon * std::log(horizon));
}

double critical_tail_prob(double nu, double horizon) {
    check_inputs(nu, horizon);
    return (nu + 1.0) * std::exp(log_tail_constant(nu) + log_time_factor(nu, horizon));
}

double critical_tail_prob_integral(double nu, double horizon) {
    check_inputs(nu, horizon);
    return std::exp(log_tail_constant(nu) + log_time_factor(nu, horizon)) / nu;
}

double critical_tail_prob_quadrature(double nu, double horizon, double sigma) {
    const double x_star = critical_x(sigma, nu, horizon);
    const StudentTParams st{0.0, sigma, nu};
    // Substitute x = x* (1 + u) so the integrand is O(1) near u = 0.
    auto f = [&](double u) { return x_star * st_tail_asymptote(st, x_star * (1.0 + u), horizon); };
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0;
    const double value = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                              1e-14, &error);
    if (!std::isfinite(value) || error > 1e-10 * std::fabs(value)) {
        fail(ErrorKind::evaluation_error, "tail quadrature failed to converge");
    }
    return value;
}

double critical_nu(double alpha, double horizon) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 0.5, ErrorKind::domain_error,
            "alpha must lie in (0, 0.5)");
    require(std::isfinite(horizon) && horizon > 1.0, ErrorKind::domain_error,
            "horizon must exceed one day (ln T > 0)");

    // critical_tail_prob decreases in nu over the bracket; work in logs.
    const double target = std::log(alpha);
    auto g = [&](double nu) { return std::log(critical_tail_prob(nu, horizon)) - target; };
    double lo = kNuLow;
    double hi = kNuHigh;
    double g_lo = g(lo);
    const double g_hi = g(hi);
    if (g_lo < 0.0 || g_hi > 0.0) {
        fail(ErrorKind::no_root, "critical_nu: alpha is outside the range reachable for nu in (2.01, 50]");
    }
    // Bisection well past the 1e-6 requirement so the round trip holds
    // to 1e-9 relative.
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RegimeReport classify_regime(double fitted_nu, double alpha, double horizon) {
    require(std::isfinite(fitted_nu) && fitted_nu > 0.0, ErrorKind::domain_error,
            "classify_regime: fitted nu must be positive");
    RegimeReport r;
    r.alpha = alpha;
    r.horizon = horizon;
    r.nu_star = critical_nu(alpha, horizon);
    r.x_star = critical_x(1.0, r.nu_star, horizon);
    r.fitted_nu = fitted_nu;
    r.regime = fitted_nu >= r.nu_star ? Regime::convergence : Regime::non_convergence;
    return r;
}

double vg_normal_reldiff(const VGParams& params, int n, double x_probe) {
    validate(params);
    require(n >= 1, ErrorKind::invalid_params, "vg_normal_reldiff: n must be >= 1");
    require(x_probe >= 2.0 && x_probe <= 5.0, ErrorKind::domain_error,
            "vg_normal_reldiff: probe must lie in [2, 5] standard deviations");
    const VGParams vg_n = vg_convolve_analytic(params, n);
    const double m = mean(vg_n);
    const double v = variance(vg_n);
    const NormalParams normal{m, v, 1.0};
    const double x = m - x_probe * std::sqrt(v);
    const double f_n = cumulative(normal, x);
    return std::fabs(cumulative(vg_n, x) - f_n) / f_n;
}

std::vector<std::pair<double, double>> critical_nu_curve(std::span<const double> alphas,
                                                          double horizon) {
    std::vector<std::pair<double, double>> out;
    out.reserve(alphas.size());
    for (double a : alphas) out.emplace_back(a, critical_nu(a, horizon));
    return out;
}

}  // namespace varscale
