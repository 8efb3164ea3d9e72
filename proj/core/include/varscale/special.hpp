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

#ifndef VARSCALE_SPECIAL_HPP_
#define VARSCALE_SPECIAL_HPP_

// Special functions needed by the P&L densities. All of them are accurate to
// a relative 1e-10 or better on the domains the library uses; the unit tests
// pin each one against high-precision tabulated values.

namespace varscale::special {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.77245385090551602730;
inline constexpr double sqrt_2 = 1.41421356237309504880;
inline constexpr double log_pi = 1.14472988584940017414;

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// Standard normal density and distribution function. The distribution
/// function goes through erfc so the far left tail keeps full relative
/// precision.
double normal_pdf(double z);
double normal_cdf(double z);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Modified Bessel function of the second kind K_v(x), x > 0.
double bessel_k(double v, double x);

/// ln K_v(x), x > 0, valid where K_v itself over- or underflows (large
/// orders near the origin, large arguments). Small orders are seeded from
/// the library K and lifted to the target order by forward recurrence,
/// which is stable for K.
double log_bessel_k(double v, double x);

}  // namespace varscale::special

#endif  // VARSCALE_SPECIAL_HPP_
