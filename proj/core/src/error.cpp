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

#include "varscale/error.hpp"

namespace varscale {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_params: return "invalid-params";
        case ErrorKind::evaluation_error: return "evaluation-error";
        case ErrorKind::domain_error: return "domain-error";
        case ErrorKind::undefined_variance: return "undefined-variance";
        case ErrorKind::resource_limit: return "resource-limit";
        case ErrorKind::wrap_around: return "wrap-around-detected";
        case ErrorKind::numeric_failure: return "numeric-failure";
        case ErrorKind::insufficient_tail_mass: return "insufficient-tail-mass";
        case ErrorKind::no_root: return "no-root";
        case ErrorKind::non_convergence: return "non-convergence";
        case ErrorKind::invalid_family: return "invalid-family";
        case ErrorKind::insufficient_history: return "insufficient-history";
        case ErrorKind::misaligned_history: return "misaligned-history";
        case ErrorKind::invalid_spec: return "invalid-spec";
        case ErrorKind::parse_error: return "parse-error";
        case ErrorKind::config_error: return "config-error";
    }
    return "unknown";
}

}  // namespace varscale
