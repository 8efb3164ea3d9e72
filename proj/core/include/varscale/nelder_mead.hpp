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

#ifndef VARSCALE_NELDER_MEAD_HPP_
#define VARSCALE_NELDER_MEAD_HPP_

#include <functional>
#include <span>
#include <vector>

namespace varscale {

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Stop once every vertex lies within tolerance * max(1, |best|) of the
    /// best vertex (infinity norm).
    double tolerance = 1e-8;
    /// Per-coordinate offsets used to build the initial simplex.
    std::vector<double> initial_step;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Unconstrained derivative-free simplex minimisation with the standard
/// reflection/expansion/contraction/shrink coefficients (1, 2, 1/2, 1/2).
/// Deterministic: identical inputs give bitwise-identical results.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options);

}  // namespace varscale

#endif  // VARSCALE_NELDER_MEAD_HPP_
