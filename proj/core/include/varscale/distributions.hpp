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

#ifndef VARSCALE_DISTRIBUTIONS_HPP_
#define VARSCALE_DISTRIBUTIONS_HPP_

#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace varscale {

/// Normal P&L with daily drift and daily variance, observed over a horizon
/// of `horizon` days: mean mu*T, variance sigma2*T.
struct NormalParams {
    double mu = 0.0;
    double sigma2 = 1.0;
    double horizon = 1.0;

    bool operator==(const NormalParams&) const = default;
};

/// Location-scale Student's t. There is no horizon: the t family is not
/// closed under convolution.
struct StudentTParams {
    double mu = 0.0;
    double sigma = 1.0;
    double nu = 4.0;

    bool operator==(const StudentTParams&) const = default;
};

/// Variance-Gamma: Brownian motion with drift theta and volatility sigma,
/// run on a gamma clock with unit mean rate and variance rate k, plus a
/// deterministic drift mu. Closed under convolution through the horizon.
struct VGParams {
    double mu = 0.0;
    double sigma = 1.0;
    double theta = 0.0;
    double k = 0.5;
    double horizon = 1.0;

    bool operator==(const VGParams&) const = default;
};

using DistParams = std::variant<NormalParams, StudentTParams, VGParams>;

enum class Family { normal, student_t, variance_gamma };

Family family_of(const DistParams& params) noexcept;
std::string_view to_string(Family family) noexcept;
/// Accepts "normal"/"N", "student_t"/"st"/"ST", "variance_gamma"/"vg"/"VG".
Family family_from_string(std::string_view name);

/// Throws Error(invalid_params) when the parameter set violates its family's
/// constraints (sigma2, sigma, nu, k, horizon all strictly positive, finite).
void validate(const DistParams& params);

double density(const DistParams& params, double x);
double cumulative(const DistParams& params, double x);

/// Distribution function at each point of an ascending sequence. Equal to
/// mapping `cumulative`, but for the t and VG families the work is shared
/// across points: only the first point needs a full tail integral.
std::vector<double> cumulative_sorted(const DistParams& params,
                                      std::span<const double> sorted_xs);

/// Inverse distribution function by exponential bracketing from the centre
/// and bisection down to a 1e-12 bracket.
double quantile(const DistParams& params, double p);

/// Mean of the distribution at its horizon: mu T, mu, or (mu + theta) T.
double mean(const DistParams& params);

/// Variance at the horizon. Throws Error(undefined_variance) for t with
/// nu <= 2.
double variance(const DistParams& params);

/// Power-law tail of the t density, scaled linearly in the horizon:
///   C(nu) (sigma sqrt(nu))^nu T / x^(nu+1),
///   C(nu) = Gamma((nu+1)/2) / (sqrt(pi) Gamma(nu/2)).
/// Defined for x > 0; callers reflect for the left tail.
double st_tail_asymptote(const StudentTParams& params, double x, double horizon);

/// Standard normal quantile through the generic root finder.
double standard_normal_quantile(double p);

}  // namespace varscale

#endif  // VARSCALE_DISTRIBUTIONS_HPP_
