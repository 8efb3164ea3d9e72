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

#ifndef VARSCALE_RISKMEASURE_HPP_
#define VARSCALE_RISKMEASURE_HPP_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "varscale/convolution.hpp"
#include "varscale/distributions.hpp"
#include "varscale/fitting.hpp"

namespace varscale {

/// Which scaling route produced a VaR figure.
enum class VaRMethod {
    srtr_normal,           // Normal fit, variance linear in time
    clt_normal_from_st,    // t fit with nu >= nu*, variance-matched Normal
    clt_normal_from_vg,    // VG fit, variance-matched Normal
    explicit_convolution,  // t fit with nu < nu*, FFT convolution
};

std::string_view to_string(VaRMethod method) noexcept;

struct VaRFigure {
    double alpha = 0.0;
    double horizon = 0.0;
    /// Loss quantile, positive for a loss.
    double value = 0.0;
    VaRMethod method = VaRMethod::srtr_normal;
    /// One-day law the figure was scaled from, after any mean removal.
    DistParams one_day;
    /// Critical degrees of freedom; only meaningful for t fits at T > 1.
    double nu_star = 0.0;
    bool zero_mean = true;
};

struct ScaleOptions {
    /// Remove the fitted mean before scaling.
    bool zero_mean = true;
    GridOptions grid;
};

/// Loss quantile of a grid: minus the level-alpha quantile of its
/// piecewise-linear distribution function. alpha in (0, 0.5].
double var_from_grid(const DensityGrid& grid, double alpha);

/// sqrt(horizon) * z(alpha) / z(0.01) * var_1d with z the standard Normal
/// quantile: a 99% one-day VaR rescaled under normality.
double ec_normal_srtr(double var_1d, double alpha, double horizon = 250.0);

/// VaR of the n-fold sum of iid t draws through the FFT engine.
double st_convolution_var(const StudentTParams& params, double alpha, int n,
                          const GridOptions& grid = {});

/// VaR of the Normal with the given one-day mean and variance, scaled to n.
double matched_normal_var(double mean_1d, double variance_1d, double alpha, int n);

/// Scales a one-day fit to n days following the regime of its family and,
/// for the t family, of nu against nu*(alpha, n). Requires a converged fit.
VaRFigure scale_var(const FitResult& fit, double alpha, int n, const ScaleOptions& options = {});

/// (nu, VaR_t / VaR_N) for a unit-scale t, with the Normal matched in
/// variance; both at horizon n.
std::vector<std::pair<double, double>> var_ratio_curve(std::span<const double> nu_values,
                                                        double alpha, int n,
                                                        const GridOptions& grid = {});

/// Signed (VaR_t - VaR_N) / VaR_N for a t of scale sigma at nu = nu*(alpha, n),
/// VaR_t by explicit convolution and VaR_N from the matched variance.
double appendix_a_reldiff(double alpha, double sigma = 1.0, int n = 250,
                          const GridOptions& grid = {});

}  // namespace varscale

#endif  // VARSCALE_RISKMEASURE_HPP_
