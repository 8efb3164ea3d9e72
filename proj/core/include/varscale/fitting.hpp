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

#ifndef VARSCALE_FITTING_HPP_
#define VARSCALE_FITTING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varscale/distributions.hpp"

namespace varscale {

/// Sorted 1-day P&L observations. Construction enforces at least 30 points,
/// finite values and strictly positive sample variance.
class EmpiricalSample {
public:
    static constexpr std::size_t kMinSize = 30;

    explicit EmpiricalSample(std::vector<double> values, std::string as_of = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::string& as_of() const noexcept { return as_of_; }

    double mean() const noexcept { return mean_; }
    /// Unbiased (n - 1) sample variance.
    double variance() const noexcept { return variance_; }

private:
    std::vector<double> values_;
    std::string as_of_;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

struct FitResult {
    DistParams params;
    double mse = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Fraction of observations <= x.
double empirical_cdf(const EmpiricalSample& sample, double x);

/// Mean squared distance between the model CDF and the plotting positions
/// (i - 0.5)/n, evaluated at the sorted observations.
double mse_score(const EmpiricalSample& sample, const DistParams& params);

/// Moment matching: mu = mean/T, sigma2 = variance/T.
FitResult fit_normal(const EmpiricalSample& sample, double horizon = 1.0);

/// Moment-based starting point for the MSE fit of `family`.
DistParams default_initial_guess(const EmpiricalSample& sample, Family family);

/// CDF-MSE fit of the t or VG family by Nelder-Mead on transformed
/// coordinates (nu in (2, 200], positive sigma and k). VG fits use a unit
/// horizon. On hitting the iteration cap the best point found is returned
/// with converged = false. Throws Error(invalid_family) for the Normal.
FitResult fit_cdf_mse(const EmpiricalSample& sample, Family family,
                      std::optional<DistParams> init = std::nullopt);

/// Per-window outcome of the three fits. A failed fit leaves its slot empty
/// and records the reason.
struct WindowFit {
    std::string as_of;
    std::optional<FitResult> normal;
    std::optional<FitResult> student_t;
    std::optional<FitResult> variance_gamma;
    std::vector<std::string> errors;
};

/// Fits every window independently; a failure in one window never stops the
/// others. Output order follows input order.
std::vector<WindowFit> rolling_fit(std::span<const EmpiricalSample> samples);

}  // namespace varscale

#endif  // VARSCALE_FITTING_HPP_
