/*
 * Copyright 2026 The rbdo-ouq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ouq/uncertainty_model.hpp"

namespace ouq {

/// Scalar model of the full input vector z, ordered as the problem's quantities.
using ResponseFn = std::function<double(std::span<const double>)>;

/// Builds a response for a concrete quantity ordering and parameter set.
/// Throws ouq::Error when a required quantity or parameter is missing.
using ResponseBuilder =
    std::function<ResponseFn(const std::vector<std::string>& quantity_names,
                             const std::map<std::string, double>& params)>;

class ResponseRegistry {
public:
    /// Process-wide registry with the built-in responses pre-registered:
    ///   linear     c0 + sum c_<q> * z_q + sum d_<p> * param_p
    ///   quadratic  c0 + sum c_<q> * z_q^2 + sum d_<p> * param_p^2
    ///   column_buckling, column_area (see column_benchmark.hpp)
    static ResponseRegistry& global();

    void add(const std::string& name, ResponseBuilder builder);
    [[nodiscard]] bool contains(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] ResponseFn bind(const ResponseSpec& spec, const std::vector<std::string>& quantity_names) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, ResponseBuilder> builders_;
};

/// Convenience for the common case of binding a problem's own response.
[[nodiscard]] ResponseFn bind_response(const UQProblem& problem);

/// Helpers for builders.
[[nodiscard]] std::size_t require_quantity(const std::vector<std::string>& names, const std::string& name);
[[nodiscard]] double require_param(const std::map<std::string, double>& params, const std::string& name);
[[nodiscard]] double param_or(const std::map<std::string, double>& params, const std::string& name, double fallback);

}  // namespace ouq
