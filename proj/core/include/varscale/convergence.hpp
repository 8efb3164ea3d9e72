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

#ifndef VARSCALE_CONVERGENCE_HPP_
#define VARSCALE_CONVERGENCE_HPP_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "varscale/distributions.hpp"

namespace varscale {

enum class Regime { convergence, non_convergence };

std::string_view to_string(Regime regime) noexcept;

struct RegimeReport {
    double alpha = 0.0;
    double horizon = 0.0;
    double nu_star = 0.0;
    /// Critical P&L level for a unit-scale t at nu_star.
    double x_star = 0.0;
    double fitted_nu = 0.0;
    Regime regime = Regime::convergence;
};

/// x* = sigma sqrt(nu) sqrt(T ln T): beyond it the T-fold t sum keeps its
/// power tail instead of the matched Normal's. Requires T > 1.
double critical_x(double sigma, double nu, double horizon);

/// Closed-form tail probability beyond x*:
///   (nu + 1) C(nu) T^(-(nu-2)/2) (ln T)^(-nu/2),
///   C(nu) = Gamma((nu+1)/2) / (sqrt(pi) Gamma(nu/2)).
double critical_tail_prob(double nu, double horizon);

/// The same tail probability obtained by integrating the T-scaled t tail
/// asymptote from x* to infinity in closed form:
///   C(nu)/nu T^(-(nu-2)/2) (ln T)^(-nu/2).
/// Kept for diagnostics only; it is smaller than critical_tail_prob by
/// nu (nu + 1).
double critical_tail_prob_integral(double nu, double horizon);

/// Numerical quadrature of the T-scaled t tail asymptote for scale `sigma`
/// from x* to infinity. Independent of sigma.
double critical_tail_prob_quadrature(double nu, double horizon, double sigma);

/// Solves critical_tail_prob(nu, T) = alpha for nu in (2.01, 50].
/// Throws Error(no_root) when alpha is outside the bracket's range.
double critical_nu(double alpha, double horizon);

/// Ties (fitted_nu == nu_star) classify as convergence.
RegimeReport classify_regime(double fitted_nu, double alpha, double horizon);

/// |F_VG,n(-x sd) - F_N(-x sd)| / F_N(-x sd) where F_VG,n is the n-fold VG
/// (horizon times n), F_N the Normal with the same mean and variance, and
/// sd the Normal's standard deviation. Probe x in [2, 5].
double vg_normal_reldiff(const VGParams& params, int n, double x_probe);

/// (alpha, nu*) pairs for a Fig-style curve.
std::vector<std::pair<double, double>> critical_nu_curve(std::span<const double> alphas,
                                                          double horizon);

}  // namespace varscale

#endif  // VARSCALE_CONVERGENCE_HPP_
