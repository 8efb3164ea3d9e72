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

#include "varscale/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "varscale/error.hpp"
#include "varscale/nelder_mead.hpp"

namespace varscale {

namespace {

constexpr double kNuFloor = 2.0;
constexpr double kNuSpan = 198.0;
// Objective value used when a trial point cannot be evaluated.
constexpr double kPenalty = 1e6;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double nu_to_u(double nu) {
    const double s = std::clamp((nu - kNuFloor) / kNuSpan, 1e-12, 1.0 - 1e-12);
    return std::log(s / (1.0 - s));
}

double u_to_nu(double u) { return kNuFloor + kNuSpan * logistic(u); }

std::vector<double> to_coords(const DistParams& params) {
    if (const auto* st = std::get_if<StudentTParams>(&params)) {
        return {st->mu, std::log(st->sigma), nu_to_u(st->nu)};
    }
    const auto& vg = std::get<VGParams>(params);
    return {vg.mu, std::log(vg.sigma), vg.theta, std::log(vg.k)};
}

DistParams from_coords(Family family, std::span<const double> c) {
    if (family == Family::student_t) {
        return StudentTParams{c[0], std::exp(c[1]), u_to_nu(c[2])};
    }
    return VGParams{c[0], std::exp(c[1]), c[2], std::exp(c[3]), 1.0};
}

double mse_against(std::span<const double> xs, const DistParams& params) {
    const std::vector<double> cdf = cumulative_sorted(params, xs);
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        const double diff = cdf[i] - (static_cast<double>(i) + 0.5) / n;
        sum += diff * diff;
    }
    return sum / n;
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values, std::string as_of)
    : values_(std::move(values)), as_of_(std::move(as_of)) {
    require(values_.size() >= kMinSize, ErrorKind::invalid_params,
            "EmpiricalSample: at least 30 observations are required");
    for (double v : values_) {
        require(std::isfinite(v), ErrorKind::invalid_params,
                "EmpiricalSample: observations must be finite");
    }
    std::sort(values_.begin(), values_.end());
    const double n = static_cast<double>(values_.size());
    mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values_) ss += (v - mean_) * (v - mean_);
    variance_ = ss / (n - 1.0);
    require(variance_ > 0.0, ErrorKind::invalid_params,
            "EmpiricalSample: sample variance must be positive");
}

double empirical_cdf(const EmpiricalSample& sample, double x) {
    const auto v = sample.values();
    const auto count = std::upper_bound(v.begin(), v.end(), x) - v.begin();
    return static_cast<double>(count) / static_cast<double>(v.size());
}

double mse_score(const EmpiricalSample& sample, const DistParams& params) {
    validate(params);
    return mse_against(sample.values(), params);
}

FitResult fit_normal(const EmpiricalSample& sample, double horizon) {
    require(horizon > 0.0 && std::isfinite(horizon), ErrorKind::invalid_params,
            "fit_normal: horizon must be positive");
    FitResult r;
    r.params = NormalParams{sample.mean() / horizon, sample.variance() / horizon, horizon};
    r.mse = mse_score(sample, r.params);
    r.converged = true;
    r.iterations = 0;
    return r;
}

DistParams default_initial_guess(const EmpiricalSample& sample, Family family) {
    const double var = sample.variance();
    switch (family) {
        case Family::student_t: {
            const double nu = 4.0;
            return StudentTParams{sample.mean(), std::sqrt(var * (nu - 2.0) / nu), nu};
        }
        case Family::variance_gamma:
            return VGParams{sample.mean(), std::sqrt(var), 0.0, 0.5, 1.0};
        case Family::normal:
            break;
    }
    fail(ErrorKind::invalid_family, "default_initial_guess: only t and VG are fitted by MSE");
}

FitResult fit_cdf_mse(const EmpiricalSample& sample, Family family,
                      std::optional<DistParams> init) {
    require(family == Family::student_t || family == Family::variance_gamma,
            ErrorKind::invalid_family, "fit_cdf_mse: family must be student_t or variance_gamma");
    DistParams start = init ? *init : default_initial_guess(sample, family);
    require(family_of(start) == family, ErrorKind::invalid_family,
            "fit_cdf_mse: initial guess belongs to a different family");
    validate(start);
    if (auto* vg = std::get_if<VGParams>(&start)) {
        // The fit is of 1-day data: fold any horizon into the parameters.
        const double t = vg->horizon;
        *vg = VGParams{vg->mu * t, vg->sigma * std::sqrt(t), vg->theta * t, vg->k / t, 1.0};
    }

    const auto xs = sample.values();
    const double sd = std::sqrt(sample.variance());
    auto objective = [&](std::span<const double> c) {
        try {
            const DistParams p = from_coords(family, c);
            validate(p);
            const double v = mse_against(xs, p);
            return std::isfinite(v) ? v : kPenalty;
        } catch (const Error&) {
            return kPenalty;
        }
    };

    NelderMeadOptions options;
    options.max_iterations = 2000;
    options.tolerance = 1e-8;
    if (family == Family::student_t) {
        options.initial_step = {0.1 * sd, 0.1, 0.5};
    } else {
        options.initial_step = {0.1 * sd, 0.1, 0.1 * sd, 0.3};
    }
    const NelderMeadResult nm = nelder_mead(objective, to_coords(start), options);

    FitResult r;
    r.params = from_coords(family, nm.x);
    r.mse = nm.value;
    r.converged = nm.converged;
    r.iterations = nm.iterations;
    if (r.mse >= kPenalty) {
        fail(ErrorKind::numeric_failure, "fit_cdf_mse: objective could not be evaluated");
    }
    return r;
}

std::vector<WindowFit> rolling_fit(std::span<const EmpiricalSample> samples) {
    std::vector<WindowFit> out;
    out.reserve(samples.size());
    for (const auto& sample : samples) {
        WindowFit w;
        w.as_of = sample.as_of();
        auto attempt = [&](std::optional<FitResult>& slot, auto&& fit, std::string_view name) {
            try {
                slot = fit();
            } catch (const std::exception& e) {
                w.errors.push_back(std::string(name) + ": " + e.what());
            }
        };
        attempt(w.normal, [&] { return fit_normal(sample); }, "normal");
        attempt(w.student_t, [&] { return fit_cdf_mse(sample, Family::student_t); }, "student_t");
        attempt(w.variance_gamma, [&] { return fit_cdf_mse(sample, Family::variance_gamma); },
                "variance_gamma");
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace varscale
