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

#include "varscale/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "varscale/error.hpp"

namespace varscale::special {

namespace {

// Above this argument K_v(x) underflows for small orders; switch to the
// Hankel expansion evaluated in log space.
constexpr double kLargeArgument = 600.0;
// Orders at or below this are handed directly to the library K when the
// result is representable.
constexpr double kDirectOrderLimit = 40.0;

double log_bessel_k_large_x(double v, double x) {
    // K_v(x) ~ sqrt(pi/2x) e^-x sum_k a_k(v) / x^k, only used for v <= 2.
    const double mu = 4.0 * v * v;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return 0.5 * std::log(pi / (2.0 * x)) - x + std::log(sum);
}

double log_bessel_k_small_order(double v, double x) {
    if (x > kLargeArgument) return log_bessel_k_large_x(v, x);
    if (x < 1e-100) {
        // Leading small-argument terms.
        if (v == 0.0) return std::log(-std::log(0.5 * x) - 0.57721566490153286061);
        return log_gamma(v) - std::log(2.0) + v * std::log(2.0 / x);
    }
    return std::log(std::cyl_bessel_k(v, x));
}

}  // namespace

double log_gamma(double x) {
    require(x > 0.0, ErrorKind::domain_error, "log_gamma: argument must be positive");
    return boost::math::lgamma(x);
}

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / (sqrt_2 * sqrt_pi);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / sqrt_2);
}

double incomplete_beta(double a, double b, double x) {
    require(a > 0.0 && b > 0.0, ErrorKind::domain_error,
            "incomplete_beta: shape parameters must be positive");
    require(x >= 0.0 && x <= 1.0, ErrorKind::domain_error,
            "incomplete_beta: argument outside [0, 1]");
    return boost::math::ibeta(a, b, x);
}

double bessel_k(double v, double x) {
    require(x > 0.0, ErrorKind::domain_error, "bessel_k: argument must be positive");
    return std::cyl_bessel_k(std::fabs(v), x);
}

double log_bessel_k(double v, double x) {
    require(x > 0.0, ErrorKind::domain_error, "log_bessel_k: argument must be positive");
    v = std::fabs(v);

    if (v <= kDirectOrderLimit && x <= kLargeArgument && x >= 1e-100) {
        const double direct = std::cyl_bessel_k(v, x);
        if (std::isfinite(direct) && direct > 1e-290 && direct < 1e290) {
            return std::log(direct);
        }
    }

    const double steps = std::floor(v);
    const double base = v - steps;
    const double log_k0 = log_bessel_k_small_order(base, x);
    if (steps == 0.0) return log_k0;
    const double log_k1 = log_bessel_k_small_order(base + 1.0, x);

    // K_{o+1} = K_{o-1} + (2o/x) K_o, carried relative to exp(log_scale).
    double log_scale = log_k0;
    double prev = 1.0;
    double cur = std::exp(log_k1 - log_k0);
    for (double order = base + 1.0; order < v - 0.5; order += 1.0) {
        const double next = prev + (2.0 * order / x) * cur;
        prev = cur;
        cur = next;
        if (cur > 1e250) {
            prev /= cur;
            log_scale += std::log(cur);
            cur = 1.0;
        }
    }
    const double result = log_scale + std::log(cur);
    if (!std::isfinite(result)) {
        fail(ErrorKind::evaluation_error, "log_bessel_k: recurrence failed to produce a finite value");
    }
    return result;
}

}  // namespace varscale::special
