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

#include "ouq/response.hpp"

#include <algorithm>

#include "ouq/column_benchmark.hpp"
#include "ouq/error.hpp"

namespace ouq {

namespace {

// Fixed part c0 + sum_k d_<param_k> * f(param_k) plus the coefficient list of
// the c_<quantity> terms. Parameters named by d_ terms are typically design
// values injected by the design loop.
struct PolynomialTerms {
    double constant = 0.0;
    std::vector<std::pair<std::size_t, double>> terms;
};

template <class F>
PolynomialTerms polynomial_terms(const std::vector<std::string>& names, const std::map<std::string, double>& params,
                                 F&& f) {
    PolynomialTerms out;
    out.constant = param_or(params, "c0", 0.0);
    for (const auto& [key, value] : params) {
        if (key.rfind("c_", 0) == 0) out.terms.emplace_back(require_quantity(names, key.substr(2)), value);
        if (key.rfind("d_", 0) == 0) out.constant += value * f(require_param(params, key.substr(2)));
    }
    return out;
}

// z -> c0 + sum_i c_<name_i> * z_i + sum_k d_<param_k> * param_k. Missing
// coefficients are zero, so the same builder covers constants and any
// linear limit state.
ResponseFn build_linear(const std::vector<std::string>& names, const std::map<std::string, double>& params) {
    const auto t = polynomial_terms(names, params, [](double x) { return x; });
    return [t](std::span<const double> z) {
        double acc = t.constant;
        for (const auto& [i, c] : t.terms) acc += c * z[i];
        return acc;
    };
}

// Same with every variable squared.
ResponseFn build_quadratic(const std::vector<std::string>& names, const std::map<std::string, double>& params) {
    const auto t = polynomial_terms(names, params, [](double x) { return x * x; });
    return [t](std::span<const double> z) {
        double acc = t.constant;
        for (const auto& [i, c] : t.terms) acc += c * z[i] * z[i];
        return acc;
    };
}

}  // namespace

ResponseRegistry& ResponseRegistry::global() {
    static ResponseRegistry* registry = [] {
        auto* r = new ResponseRegistry();
        r->add("linear", build_linear);
        r->add("quadratic", build_quadratic);
        column::register_responses(*r);
        return r;
    }();
    return *registry;
}

void ResponseRegistry::add(const std::string& name, ResponseBuilder builder) {
    std::lock_guard lock(mutex_);
    builders_[name] = std::move(builder);
}

bool ResponseRegistry::contains(const std::string& name) const {
    std::lock_guard lock(mutex_);
    return builders_.contains(name);
}

std::vector<std::string> ResponseRegistry::names() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [name, _] : builders_) out.push_back(name);
    return out;
}

ResponseFn ResponseRegistry::bind(const ResponseSpec& spec, const std::vector<std::string>& quantity_names) const {
    ResponseBuilder builder;
    {
        std::lock_guard lock(mutex_);
        auto it = builders_.find(spec.name);
        if (it == builders_.end()) throw Error("unknown response '" + spec.name + "'");
        builder = it->second;
    }
    return builder(quantity_names, spec.params);
}

ResponseFn bind_response(const UQProblem& problem) {
    return ResponseRegistry::global().bind(problem.response, problem.names());
}

std::size_t require_quantity(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error("response requires quantity '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

double require_param(const std::map<std::string, double>& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw Error("response requires parameter '" + name + "'");
    return it->second;
}

double param_or(const std::map<std::string, double>& params, const std::string& name, double fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

}  // namespace ouq
