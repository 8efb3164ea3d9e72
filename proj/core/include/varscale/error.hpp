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

#ifndef VARSCALE_ERROR_HPP_
#define VARSCALE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace varscale {

enum class ErrorKind {
    invalid_params,
    evaluation_error,
    domain_error,
    undefined_variance,
    resource_limit,
    wrap_around,
    numeric_failure,
    insufficient_tail_mass,
    no_root,
    non_convergence,
    invalid_family,
    insufficient_history,
    misaligned_history,
    invalid_spec,
    parse_error,
    config_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const char* what) {
    if (!condition) fail(kind, what);
}

}  // namespace varscale

#endif  // VARSCALE_ERROR_HPP_
