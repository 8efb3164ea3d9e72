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

#include "varscale/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "quadrature.hpp"
#include "varscale/error.hpp"
#include "varscale/special.hpp"

namespace varscale {

namespace {

using special::log_gamma;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// --- Normal -----------------------------------------------------------------

double normal_sd(const NormalParams& p) { return std::sqrt(p.sigma2 * p.horizon); }

double density_of(const NormalParams& p, double x) {
    const double sd = normal_sd(p);
    return special::normal_pdf((x - p.mu * p.horizon) / sd) / sd;
}

double cdf_of(const NormalParams& p, double x) {
    return special::normal_cdf((x - p.mu * p.horizon) / normal_sd(p));
}

// --- Student's t ------------------------------------------------------------

double st_log_norm(double nu) {
    return log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) - 0.5 * std::log(nu) -
           0.5 * special::log_pi;
}

double density_of(const StudentTParams& p, double x) {
    const double t = (x - p.mu) / p.sigma;
    return std::exp(st_log_norm(p.nu) - 0.5 * (p.nu + 1.0) * std::log1p(t * t / p.nu)) /
           p.sigma;
}

double cdf_of(const StudentTParams& p, double x) {
    const double t = (x - p.mu) / p.sigma;
    const double t2 = t * t;
    // Lower tail mass of |t|, computed from whichever beta argument is small.
    double tail;
    if (t2 < p.nu) {
        tail = 0.5 - 0.5 * special::incomplete_beta(0.5, 0.5 * p.nu, t2 / (p.nu + t2));
    } else {
        tail = 0.5 * special::incomplete_beta(0.5 * p.nu, 0.5, p.nu / (p.nu + t2));
    }
    return t < 0.0 ? tail : 1.0 - tail;
}

// --- Variance-Gamma ---------------------------------------------------------

struct VGShape {
    double centre;     // mu * T
    double a;          // T / k, gamma clock shape
    double order;      // a - 1/2
    double g;          // sqrt(2 sigma^2 / k + theta^2)
    double log_norm;   // log of the prefactor without the exp(theta d / sigma^2)
    double decay;      // slower of the two exponential tail rates
    double fast_decay; // faster of the two exponential tail rates
};

VGShape vg_shape(const VGParams& p) {
    VGShape s{};
    s.centre = p.mu * p.horizon;
    s.a = p.horizon / p.k;
    s.order = s.a - 0.5;
    s.g = std::sqrt(2.0 * p.sigma * p.sigma / p.k + p.theta * p.theta);
    s.log_norm = 0.5 * std::log(2.0) - std::log(p.sigma) - 0.5 * special::log_pi -
                 s.a * std::log(p.k) - log_gamma(s.a);
    const double s2 = p.sigma * p.sigma;
    s.decay = (s.g - std::fabs(p.theta)) / s2;
    s.fast_decay = (s.g + std::fabs(p.theta)) / s2;
    return s;
}

// Density at offset d = x - mu*T from the centre.
double vg_density_offset(const VGParams& p, const VGShape& s, double d) {
    const double ad = std::fabs(d);
    const double s2 = p.sigma * p.sigma;
    if (s.order > 0.0 && ad < 1e-12 * p.sigma) {
        // (|d|/g)^o K_o(|d| g / s2) -> Gamma(o)/2 (2 s2 / g^2)^o as d -> 0.
        const double log_limit = log_gamma(s.order) - std::log(2.0) +
                                 s.order * std::log(2.0 * s2 / (s.g * s.g));
        return std::exp(s.log_norm + log_limit);
    }
    if (ad == 0.0) return std::numeric_limits<double>::infinity();
    const double z = ad * s.g / s2;
    const double log_p = s.log_norm + p.theta * d / s2 +
                         s.order * (std::log(ad) - std::log(s.g)) +
                         special::log_bessel_k(s.order, z);
    return std::exp(log_p);
}

double vg_density(const VGParams& p, const VGShape& s, double x) {
    return vg_density_offset(p, s, x - s.centre);
}

double vg_sd(const VGParams& p) {
    return std::sqrt((p.sigma * p.sigma + p.theta * p.theta * p.k) * p.horizon);
}

// Integral of the VG density over the half-line beyond x, walking outward in
// segments until the contribution is negligible. `direction` is -1 for
// (-inf, x] and +1 for [x, +inf). Never crosses the centre.
double vg_tail_integral(const VGParams& p, const VGShape& s, double x, int direction) {
    // Offsets from the centre keep points next to the cusp resolvable.
    auto f = [&p, &s](double d) {
        return vg_density_offset(p, s, d == 0.0 ? 1e-300 * p.sigma : d);
    };
    const double width = std::min(vg_sd(p), 4.0 / s.decay);
    const double near = 0.25 * vg_sd(p);
    const double start = x - s.centre;
    const bool cusp = std::fabs(start) < near && (start == 0.0 || s.order <= 0.0);
    double total = 0.0;
    double inner = start;
    for (int segment = 0; segment < 100000; ++segment) {
        const double outer = inner + direction * width;
        const double lo = std::min(inner, outer);
        const double hi = std::max(inner, outer);
        double piece;
        if (segment == 0 && cusp) {
            piece = detail::integrate_endpoint_singular(f, lo, hi, 1e-14);
        } else {
            piece = detail::integrate_adaptive(f, lo, hi, 1e-14);
        }
        total += piece;
        if (piece < 1e-17 && segment > 0) return total;
        inner = outer;
    }
    fail(ErrorKind::evaluation_error, "VG tail integral did not terminate");
}

double cdf_of(const VGParams& p, double x) {
    const VGShape s = vg_shape(p);
    double value;
    if (x <= s.centre) {
        value = vg_tail_integral(p, s, x, -1);
    } else {
        value = 1.0 - vg_tail_integral(p, s, x, +1);
    }
    return std::clamp(value, 0.0, 1.0);
}

// Density integral over [a, b] for the batched distribution function. `f`
// takes the offset from the centre so that points next to it keep full
// relative precision. Panels widen with distance from the centre. When
// `near` > 0 the density has a cusp at the centre: a piece ending on it goes
// through tanh-sinh and other panels stay within a third of their distance
// from it.
template <class Density>
double panel_integral(Density&& f, double a, double b, double centre, double scale,
                      double max_width, double near) {
    double lo = a - centre;
    double hi = b - centre;
    double total = 0.0;
    if (near > 0.0 && lo == 0.0) {
        const double cut = std::min(hi, near);
        total += detail::integrate_endpoint_singular(f, 0.0, cut, 1e-15);
        lo = cut;
    } else if (near > 0.0 && hi == 0.0) {
        const double cut = std::max(lo, -near);
        total += detail::integrate_endpoint_singular(f, cut, 0.0, 1e-15);
        hi = cut;
    }
    double pos = lo;
    while (pos < hi) {
        const double local = near > 0.0 ? std::min(scale + std::fabs(pos), std::fabs(pos))
                                        : scale + std::fabs(pos);
        double width = std::min(0.25 * (scale + std::fabs(pos)), max_width);
        if (near > 0.0) width = std::min(width, std::fabs(pos) / 3.0);
        const double next = std::min(hi, pos + width);
        // Short panels relative to the local scale need only the 4-point rule.
        if (next - pos <= 0.02 * local) {
            total += detail::gauss_legendre4(f, pos, next);
        } else {
            total += detail::gauss_legendre8(f, pos, next);
        }
        pos = next;
    }
    return total;
}

std::vector<double> accumulate_gaps(const DistParams& params, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    if (xs.empty()) return out;
    double acc = cumulative(params, xs[0]);
    out[0] = std::clamp(acc, 0.0, 1.0);

    if (const auto* st = std::get_if<StudentTParams>(&params)) {
        const double log_norm = st_log_norm(st->nu) - std::log(st->sigma);
        const double power = -0.5 * (st->nu + 1.0);
        auto f = [&](double d) {
            const double t = d / st->sigma;
            return std::exp(log_norm + power * std::log1p(t * t / st->nu));
        };
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (xs[i] > xs[i - 1]) {
                acc += panel_integral(f, xs[i - 1], xs[i], st->mu, st->sigma,
                                      std::numeric_limits<double>::infinity(), -1.0);
            }
            out[i] = std::clamp(acc, 0.0, 1.0);
        }
        return out;
    }

    const auto& vg = std::get<VGParams>(params);
    const VGShape s = vg_shape(vg);
    auto f = [&vg, &s](double d) {
        return vg_density_offset(vg, s, d == 0.0 ? 1e-300 * vg.sigma : d);
    };
    const double scale = vg_sd(vg);
    const double max_width = 2.0 / s.fast_decay;
    const double near = 0.05 * scale;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double lo = xs[i - 1];
        const double hi = xs[i];
        if (hi > lo) {
            if (lo < s.centre && s.centre < hi) {
                acc += panel_integral(f, lo, s.centre, s.centre, scale, max_width, near);
                acc += panel_integral(f, s.centre, hi, s.centre, scale, max_width, near);
            } else {
                acc += panel_integral(f, lo, hi, s.centre, scale, max_width, near);
            }
        }
        out[i] = std::clamp(acc, 0.0, 1.0);
    }
    return out;
}

double scale_of(const DistParams& params) {
    return std::visit(overloaded{
                          [](const NormalParams& p) { return normal_sd(p); },
                          [](const StudentTParams& p) { return p.sigma; },
                          [](const VGParams& p) { return vg_sd(p); },
                      },
                      params);
}

double centre_of(const DistParams& params) {
    return std::visit(overloaded{
                          [](const NormalParams& p) { return p.mu * p.horizon; },
                          [](const StudentTParams& p) { return p.mu; },
                          [](const VGParams& p) { return p.mu * p.horizon; },
                      },
                      params);
}

}  // namespace

Family family_of(const DistParams& params) noexcept {
    switch (params.index()) {
        case 0: return Family::normal;
        case 1: return Family::student_t;
        default: return Family::variance_gamma;
    }
}

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::normal: return "normal";
        case Family::student_t: return "student_t";
        case Family::variance_gamma: return "variance_gamma";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    if (name == "normal" || name == "N" || name == "n") return Family::normal;
    if (name == "student_t" || name == "st" || name == "ST" || name == "t") {
        return Family::student_t;
    }
    if (name == "variance_gamma" || name == "vg" || name == "VG") {
        return Family::variance_gamma;
    }
    fail(ErrorKind::invalid_family, "unknown distribution family: " + std::string(name));
}

void validate(const DistParams& params) {
    std::visit(overloaded{
                   [](const NormalParams& p) {
                       require(std::isfinite(p.mu) && positive_finite(p.sigma2) &&
                                   positive_finite(p.horizon),
                               ErrorKind::invalid_params,
                               "normal: require sigma2 > 0 and horizon > 0");
                   },
                   [](const StudentTParams& p) {
                       require(std::isfinite(p.mu) && positive_finite(p.sigma) &&
                                   positive_finite(p.nu),
                               ErrorKind::invalid_params,
                               "student_t: require sigma > 0 and nu > 0");
                   },
                   [](const VGParams& p) {
                       require(std::isfinite(p.mu) && std::isfinite(p.theta) &&
                                   positive_finite(p.sigma) && positive_finite(p.k) &&
                                   positive_finite(p.horizon),
                               ErrorKind::invalid_params,
                               "variance_gamma: require sigma > 0, k > 0 and horizon > 0");
                   },
               },
               params);
}

double density(const DistParams& params, double x) {
    validate(params);
    return std::visit(overloaded{
                          [x](const NormalParams& p) { return density_of(p, x); },
                          [x](const StudentTParams& p) { return density_of(p, x); },
                          [x](const VGParams& p) { return vg_density(p, vg_shape(p), x); },
                      },
                      params);
}

double cumulative(const DistParams& params, double x) {
    validate(params);
    if (std::isinf(x)) return x < 0.0 ? 0.0 : 1.0;
    return std::visit([x](const auto& p) { return cdf_of(p, x); }, params);
}

std::vector<double> cumulative_sorted(const DistParams& params,
                                      std::span<const double> sorted_xs) {
    validate(params);
    require(std::is_sorted(sorted_xs.begin(), sorted_xs.end()), ErrorKind::domain_error,
            "cumulative_sorted: points must be ascending");
    if (const auto* n = std::get_if<NormalParams>(&params)) {
        std::vector<double> out;
        out.reserve(sorted_xs.size());
        for (double x : sorted_xs) out.push_back(cdf_of(*n, x));
        return out;
    }
    return accumulate_gaps(params, sorted_xs);
}

double quantile(const DistParams& params, double p) {
    validate(params);
    require(p > 0.0 && p < 1.0, ErrorKind::domain_error, "quantile: p must lie in (0, 1)");

    const double centre = centre_of(params);
    const double scale = scale_of(params);
    double lo = centre;
    double hi = centre;
    double f_lo = cumulative(params, centre);
    double f_hi = f_lo;
    double step = scale;
    if (f_lo > p) {
        do {
            hi = lo;
            f_hi = f_lo;
            lo = centre - step;
            step *= 2.0;
            require(std::isfinite(lo), ErrorKind::evaluation_error,
                    "quantile: bracket expansion overflowed");
            f_lo = cumulative(params, lo);
        } while (f_lo > p);
    } else {
        do {
            lo = hi;
            f_lo = f_hi;
            hi = centre + step;
            step *= 2.0;
            require(std::isfinite(hi), ErrorKind::evaluation_error,
                    "quantile: bracket expansion overflowed");
            f_hi = cumulative(params, hi);
        } while (f_hi < p);
    }

    // Near a singular VG centre a 1e-12 bracket can still span a sizeable
    // probability, so keep halving until the mass inside is negligible too.
    while (hi - lo > 1e-12 || f_hi - f_lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = cumulative(params, mid);
        if (f_mid < p) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

double mean(const DistParams& params) {
    validate(params);
    if (const auto* st = std::get_if<StudentTParams>(&params)) {
        require(st->nu > 1.0, ErrorKind::undefined_variance,
                "student_t: mean undefined for nu <= 1");
    }
    // The gamma clock has mean T, so the drift theta adds theta T.
    if (const auto* vg = std::get_if<VGParams>(&params)) return (vg->mu + vg->theta) * vg->horizon;
    return centre_of(params);
}

double variance(const DistParams& params) {
    validate(params);
    return std::visit(overloaded{
                          [](const NormalParams& p) { return p.sigma2 * p.horizon; },
                          [](const StudentTParams& p) {
                              require(p.nu > 2.0, ErrorKind::undefined_variance,
                                      "student_t: variance undefined for nu <= 2");
                              return p.sigma * p.sigma * p.nu / (p.nu - 2.0);
                          },
                          [](const VGParams& p) {
                              return (p.sigma * p.sigma + p.theta * p.theta * p.k) *
                                     p.horizon;
                          },
                      },
                      params);
}

double st_tail_asymptote(const StudentTParams& params, double x, double horizon) {
    validate(params);
    require(x > 0.0, ErrorKind::domain_error, "st_tail_asymptote: x must be positive");
    require(positive_finite(horizon), ErrorKind::domain_error,
            "st_tail_asymptote: horizon must be positive");
    const double nu = params.nu;
    const double log_c = log_gamma(0.5 * (nu + 1.0)) - 0.5 * special::log_pi -
                         log_gamma(0.5 * nu);
    const double log_value = log_c + nu * std::log(params.sigma * std::sqrt(nu)) -
                             (nu + 1.0) * std::log(x);
    return std::exp(log_value) * horizon;
}

double standard_normal_quantile(double p) {
    return quantile(NormalParams{0.0, 1.0, 1.0}, p);
}

}  // namespace varscale
