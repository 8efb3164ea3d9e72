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

#ifndef VARSCALE_BLACK_SCHOLES_HPP_
#define VARSCALE_BLACK_SCHOLES_HPP_

namespace varscale {

/// European options on a dividend-paying stock. `tau` in years, `rate` and
/// `div_yield` continuously compounded, `vol` annualised. All functions throw
/// Error(domain_error) unless spot, strike, tau and vol are positive.
double bs_call_price(double spot, double strike, double tau, double rate, double div_yield,
                     double vol);
double bs_put_price(double spot, double strike, double tau, double rate, double div_yield,
                    double vol);
/// e^(-q tau) N(d1).
double bs_delta(double spot, double strike, double tau, double rate, double div_yield,
                double vol);
double bs_gamma(double spot, double strike, double tau, double rate, double div_yield,
                double vol);
double bs_vega(double spot, double strike, double tau, double rate, double div_yield,
               double vol);

}  // namespace varscale

#endif  // VARSCALE_BLACK_SCHOLES_HPP_
