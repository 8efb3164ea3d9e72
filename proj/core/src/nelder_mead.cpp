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

#include "varscale/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "varscale/error.hpp"

namespace varscale {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& vertices, std::size_t best) {
    double diameter = 0.0;
    for (const auto& v : vertices) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            diameter = std::max(diameter, std::fabs(v[i] - vertices[best][i]));
        }
    }
    return diameter;
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    require(n > 0, ErrorKind::invalid_params, "nelder_mead: empty starting point");
    require(options.initial_step.empty() || options.initial_step.size() == n,
            ErrorKind::invalid_params, "nelder_mead: initial_step has wrong dimension");

    NelderMeadResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        const double v = objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> vertex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        double step = options.initial_step.empty() ? 0.0 : options.initial_step[i];
        if (step == 0.0) step = start[i] != 0.0 ? 0.05 * start[i] : 0.00025;
        vertex[i + 1][i] += step;
    }
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i <= n; ++i) value[i] = eval(vertex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        if (simplex_diameter(vertex, best) <=
            options.tolerance * std::max(1.0, norm_inf(vertex[best]))) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += vertex[j][i];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t i = 0; i < n; ++i) {
            trial[i] = centroid[i] + (centroid[i] - vertex[worst][i]);
        }
        const double f_reflect = eval(trial);

        if (f_reflect < value[best]) {
            for (std::size_t i = 0; i < n; ++i) {
                trial2[i] = centroid[i] + 2.0 * (centroid[i] - vertex[worst][i]);
            }
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                vertex[worst] = trial2;
                value[worst] = f_expand;
            } else {
                vertex[worst] = trial;
                value[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < value[second_worst]) {
            vertex[worst] = trial;
            value[worst] = f_reflect;
            continue;
        }

        // Contraction, outside if the reflection improved on the worst point.
        const bool outside = f_reflect < value[worst];
        for (std::size_t i = 0; i < n; ++i) {
            const double towards = outside ? trial[i] : vertex[worst][i];
            trial2[i] = centroid[i] + 0.5 * (towards - centroid[i]);
        }
        const double f_contract = eval(trial2);
        if (f_contract < (outside ? f_reflect : value[worst])) {
            vertex[worst] = trial2;
            value[worst] = f_contract;
            continue;
        }

        for (std::size_t j = 0; j <= n; ++j) {
            if (j == best) continue;
            for (std::size_t i = 0; i < n; ++i) {
                vertex[j][i] = vertex[best][i] + 0.5 * (vertex[j][i] - vertex[best][i]);
            }
            value[j] = eval(vertex[j]);
        }
    }

    const auto best_it = std::min_element(value.begin(), value.end());
    const auto best = static_cast<std::size_t>(best_it - value.begin());
    result.x = vertex[best];
    result.value = value[best];
    result.iterations = iter;
    return result;
}

}  // namespace varscale
