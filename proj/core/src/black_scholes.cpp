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

#include "varscale/black_scholes.hpp"

#include <cmath>

#include "varscale/error.hpp"
#include "varscale/special.hpp"

namespace varscale {

namespace {

struct D12 {
    double d1;
    double d2;
};

D12 d_terms(double spot, double strike, double tau, double rate, double div_yield, double vol) {
    require(std::isfinite(spot) && spot > 0.0, ErrorKind::domain_error, "spot must be positive");
    require(std::isfinite(strike) && strike > 0.0, ErrorKind::domain_error,
            "strike must be positive");
    require(std::isfinite(tau) && tau > 0.0, ErrorKind::domain_error, "tau must be positive");
    require(std::isfinite(vol) && vol > 0.0, ErrorKind::domain_error, "vol must be positive");
    require(std::isfinite(rate) && std::isfinite(div_yield), ErrorKind::domain_error,
            "rates must be finite");
    const double sd = vol * std::sqrt(tau);
    const double d1 = (std::log(spot / strike) + (rate - div_yield + 0.5 * vol * vol) * tau) / sd;
    return {d1, d1 - sd};
}

}  // namespace

double bs_call_price(double spot, double strike, double tau, double rate, double div_yield,
                     double vol) {
    const D12 d = d_terms(spot, strike, tau, rate, div_yield, vol);
    return spot * std::exp(-div_yield * tau) * special::normal_cdf(d.d1) -
           strike * std::exp(-rate * tau) * special::normal_cdf(d.d2);
}

double bs_put_price(double spot, double strike, double tau, double rate, double div_yield,
                    double vol) {
    const D12 d = d_terms(spot, strike, tau, rate, div_yield, vol);
    return strike * std::exp(-rate * tau) * special::normal_cdf(-d.d2) -
           spot * std::exp(-div_yield * tau) * special::normal_cdf(-d.d1);
}

double bs_delta(double spot, double strike, double tau, double rate, double div_yield,
                double vol) {
    const D12 d = d_terms(spot, strike, tau, rate, div_yield, vol);
    return std::exp(-div_yield * tau) * special::normal_cdf(d.d1);
}

double bs_gamma(double spot, double strike, double tau, double rate, double div_yield,
                double vol) {
    const D12 d = d_terms(spot, strike, tau, rate, div_yield, vol);
    return std::exp(-div_yield * tau) * special::normal_pdf(d.d1) / (spot * vol * std::sqrt(tau));
}

double bs_vega(double spot, double strike, double tau, double rate, double div_yield,
               double vol) {
    const D12 d = d_terms(spot, strike, tau, rate, div_yield, vol);
    return spot * std::exp(-div_yield * tau) * special::normal_pdf(d.d1) * std::sqrt(tau);
}

}  // namespace varscale
