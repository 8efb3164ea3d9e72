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

#include "varscale/riskmeasure.hpp"

#include <cmath>

#include "varscale/convergence.hpp"
#include "varscale/error.hpp"

namespace varscale {

namespace {

void check_alpha(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 0.5, ErrorKind::domain_error,
            "alpha must lie in (0, 0.5)");
}

}  // namespace

std::string_view to_string(VaRMethod method) noexcept {
    switch (method) {
        case VaRMethod::srtr_normal: return "SRTR_Normal";
        case VaRMethod::clt_normal_from_st: return "CLT_Normal_from_ST";
        case VaRMethod::clt_normal_from_vg: return "CLT_Normal_from_VG";
        case VaRMethod::explicit_convolution: return "Explicit_Convolution";
    }
    return "unknown";
}

double var_from_grid(const DensityGrid& grid, double alpha) {
    // The median is admitted here: it is the natural zero-VaR check.
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 0.5, ErrorKind::domain_error,
            "alpha must lie in (0, 0.5]");
    return -grid_quantile(grid, alpha);
}

double ec_normal_srtr(double var_1d, double alpha, double horizon) {
    require(std::isfinite(var_1d) && var_1d > 0.0, ErrorKind::domain_error,
            "ec_normal_srtr: one-day VaR must be positive");
    check_alpha(alpha);
    require(std::isfinite(horizon) && horizon > 0.0, ErrorKind::domain_error,
            "ec_normal_srtr: horizon must be positive");
    return std::sqrt(horizon) * standard_normal_quantile(alpha) /
           standard_normal_quantile(0.01) * var_1d;
}

double st_convolution_var(const StudentTParams& params, double alpha, int n,
                          const GridOptions& grid) {
    check_alpha(alpha);
    const DensityGrid one_day =
        discretize(params, n, default_tail_sigmas(Family::student_t), grid);
    return var_from_grid(convolve_n_fft(one_day, n), alpha);
}

double matched_normal_var(double mean_1d, double variance_1d, double alpha, int n) {
    check_alpha(alpha);
    require(n >= 1, ErrorKind::invalid_params, "horizon must be at least one day");
    return -quantile(NormalParams{mean_1d, variance_1d, static_cast<double>(n)}, alpha);
}

VaRFigure scale_var(const FitResult& fit, double alpha, int n, const ScaleOptions& options) {
    check_alpha(alpha);
    require(n >= 1, ErrorKind::invalid_params, "scale_var: horizon must be at least one day");
    if (!fit.converged) {
        fail(ErrorKind::non_convergence, "scale_var: the fit did not converge");
    }
    validate(fit.params);

    VaRFigure out;
    out.alpha = alpha;
    out.horizon = n;
    out.zero_mean = options.zero_mean;

    if (const auto* np = std::get_if<NormalParams>(&fit.params)) {
        NormalParams day{np->mu, np->sigma2, 1.0};
        if (options.zero_mean) day.mu = 0.0;
        out.one_day = day;
        out.method = VaRMethod::srtr_normal;
        out.value = -quantile(normal_srtr(day, n), alpha);
        return out;
    }

    if (const auto* vg = std::get_if<VGParams>(&fit.params)) {
        // The fitted law is the one-day P&L whatever its internal clock.
        VGParams day = *vg;
        if (options.zero_mean) day.mu = -day.theta;
        out.one_day = day;
        out.method = VaRMethod::clt_normal_from_vg;
        out.value = matched_normal_var(mean(day), variance(day), alpha, n);
        return out;
    }

    StudentTParams day = std::get<StudentTParams>(fit.params);
    if (options.zero_mean) day.mu = 0.0;
    out.one_day = day;
    const bool converged_regime = [&] {
        if (n == 1) return false;
        out.nu_star = critical_nu(alpha, n);
        return day.nu >= out.nu_star;
    }();
    if (converged_regime) {
        out.method = VaRMethod::clt_normal_from_st;
        out.value = matched_normal_var(day.mu, variance(day), alpha, n);
    } else {
        out.method = VaRMethod::explicit_convolution;
        out.value = n == 1 ? -quantile(day, alpha)
                           : st_convolution_var(day, alpha, n, options.grid);
    }
    return out;
}

std::vector<std::pair<double, double>> var_ratio_curve(std::span<const double> nu_values,
                                                        double alpha, int n,
                                                        const GridOptions& grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(nu_values.size());
    for (double nu : nu_values) {
        require(nu > 2.0, ErrorKind::domain_error, "var_ratio_curve: nu must exceed 2");
        const StudentTParams st{0.0, 1.0, nu};
        const double ratio = st_convolution_var(st, alpha, n, grid) /
                             matched_normal_var(0.0, variance(st), alpha, n);
        out.emplace_back(nu, ratio);
    }
    return out;
}

double appendix_a_reldiff(double alpha, double sigma, int n, const GridOptions& grid) {
    check_alpha(alpha);
    require(n > 1, ErrorKind::domain_error, "appendix_a_reldiff: horizon must exceed one day");
    const double nu_star = critical_nu(alpha, n);
    const StudentTParams st{0.0, sigma, nu_star};
    const double var_st = st_convolution_var(st, alpha, n, grid);
    const double var_n =
        matched_normal_var(0.0, sigma * sigma * nu_star / (nu_star - 2.0), alpha, n);
    return (var_st - var_n) / var_n;
}

}  // namespace varscale
