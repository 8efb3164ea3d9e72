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

#ifndef VARSCALE_SRC_QUADRATURE_HPP_
#define VARSCALE_SRC_QUADRATURE_HPP_

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "varscale/error.hpp"

namespace varscale::detail {

inline constexpr std::array<double, 4> kGaussLegendre8Nodes = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168};
inline constexpr std::array<double, 4> kGaussLegendre8Weights = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

inline constexpr std::array<double, 2> kGaussLegendre4Nodes = {
    0.33998104358485626480, 0.86113631159405257522};
inline constexpr std::array<double, 2> kGaussLegendre4Weights = {
    0.65214515486254614263, 0.34785484513745385737};

/// Fixed 4-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss_legendre4(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGaussLegendre4Nodes.size(); ++i) {
        const double dx = half * kGaussLegendre4Nodes[i];
        sum += kGaussLegendre4Weights[i] * (f(mid - dx) + f(mid + dx));
    }
    return half * sum;
}

/// Fixed 8-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss_legendre8(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGaussLegendre8Nodes.size(); ++i) {
        const double dx = half * kGaussLegendre8Nodes[i];
        sum += kGaussLegendre8Weights[i] * (f(mid - dx) + f(mid + dx));
    }
    return half * sum;
}

/// Adaptive 21-point Gauss-Kronrod on a finite interval. Throws
/// evaluation_error when the error estimate stays above `abs_tol` and the
/// relative floor.
///
/// The Kronrod estimate of a smooth integrand bottoms out near 1e-11
/// relative from rounding alone. A tighter target makes every bisection
/// level add its own rounding noise, so the recursion runs to full depth
/// and the summed estimate grows instead of shrinking.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        f, a, b, 10, 1e-10, &error, &l1);
    if (!std::isfinite(value) || (error > abs_tol && error > 1e-9 * l1)) {
        fail(ErrorKind::evaluation_error, "adaptive quadrature failed to converge");
    }
    return value;
}

/// Tanh-sinh on a finite interval; tolerates integrable endpoint
/// singularities such as the VG density at its centre.
template <class F>
double integrate_endpoint_singular(F&& f, double a, double b, double abs_tol) {
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(f, a, b, 1e-13, &error, &l1);
    if (!std::isfinite(value) || (error > abs_tol && error > 1e-7 * l1)) {
        fail(ErrorKind::evaluation_error, "tanh-sinh quadrature failed to converge");
    }
    return value;
}

}  // namespace varscale::detail

#endif  // VARSCALE_SRC_QUADRATURE_HPP_
