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

#include "ouq/uncertainty_model.hpp"

#include <algorithm>
#include <set>

#include "ouq/error.hpp"
#include "ouq/response.hpp"

namespace ouq {

const ParameterSpec* DistributionSpec::find(std::string_view name) const {
    for (const auto& p : parameters)
        if (p.name == name) return &p;
    return nullptr;
}

const std::vector<std::string>& parameter_names(Family family) {
    static const std::vector<std::string> lognormal{"mean", "sd"};
    static const std::vector<std::string> gumbel{"location", "scale"};
    static const std::vector<std::string> normal{"mean", "sd"};
    static const std::vector<std::string> uniform{"lower", "upper"};
    static const std::vector<std::string> beta{"alpha", "beta", "lower", "upper"};
    switch (family) {
        case Family::lognormal: return lognormal;
        case Family::gumbel: return gumbel;
        case Family::normal: return normal;
        case Family::uniform: return uniform;
        case Family::beta: return beta;
    }
    throw Error("unknown distribution family");
}

std::string_view to_string(Family family) {
    switch (family) {
        case Family::lognormal: return "lognormal";
        case Family::gumbel: return "gumbel";
        case Family::normal: return "normal";
        case Family::uniform: return "uniform";
        case Family::beta: return "beta";
    }
    return "?";
}

Family family_from_string(std::string_view name) {
    for (auto f : {Family::lognormal, Family::gumbel, Family::normal, Family::uniform, Family::beta})
        if (to_string(f) == name) return f;
    throw Error("unknown distribution family '" + std::string(name) + "'");
}

const UncertainQuantity* UQProblem::find(std::string_view name) const {
    for (const auto& q : quantities)
        if (q.name == name) return &q;
    return nullptr;
}

std::optional<std::size_t> UQProblem::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < quantities.size(); ++i)
        if (quantities[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::string> UQProblem::names() const {
    std::vector<std::string> out;
    out.reserve(quantities.size());
    for (const auto& q : quantities) out.push_back(q.name);
    return out;
}

std::vector<std::size_t> UQProblem::epistemic_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < quantities.size(); ++i)
        if (quantities[i].epistemic()) out.push_back(i);
    return out;
}

std::vector<std::size_t> UQProblem::aleatory_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < quantities.size(); ++i)
        if (!quantities[i].epistemic()) out.push_back(i);
    return out;
}

namespace {

// Parameters that must be strictly positive for the family to be proper.
bool requires_positive(Family family, const std::string& param) {
    switch (family) {
        case Family::lognormal: return true;
        case Family::gumbel: return param == "scale";
        case Family::normal: return param == "sd";
        case Family::beta: return param == "alpha" || param == "beta";
        case Family::uniform: return false;
    }
    return false;
}

void check_moments(const UncertainQuantity& q, std::vector<Diagnostic>& out) {
    auto emit = [&](const char* rule) { out.push_back({q.name, rule}); };
    std::set<int> orders;
    const int terms = 1 + static_cast<int>(q.moments.size());
    for (const auto& m : q.moments) {
        if (m.order < 1) {
            emit("moment order must be >= 1");
            continue;
        }
        if (!orders.insert(m.order).second) emit("duplicate moment order");
        if (m.lower > m.upper) emit("moment lower bound exceeds upper bound");
        if (m.kind == MomentKind::central && m.order == 1) emit("central moment of order 1 is identically zero");
        if (m.order > 2 * terms - 1) emit("moment order exceeds term count");
        if (m.order == 1 && m.kind == MomentKind::classical &&
            (m.lower < q.range.lower || m.upper > q.range.upper))
            emit("mean bounds not within range");
        if (m.order == 2 && m.kind == MomentKind::central &&
            (m.upper < 0.0 || m.lower > 0.25 * q.range.width() * q.range.width()))
            emit("variance bounds exceed range");
    }
}

void check_distribution(const UQProblem& problem, const UncertainQuantity& q, std::vector<Diagnostic>& out) {
    auto emit = [&](const char* rule) { out.push_back({q.name, rule}); };
    const auto& d = *q.distribution;
    const auto& expected = parameter_names(d.family);
    std::vector<std::string> given;
    for (const auto& p : d.parameters) given.push_back(p.name);
    auto sorted_expected = expected;
    std::sort(sorted_expected.begin(), sorted_expected.end());
    std::sort(given.begin(), given.end());
    if (given != sorted_expected) {
        emit("distribution parameters do not match family");
        return;
    }
    auto value_of = [&](const std::string& name) -> std::optional<double> {
        const auto* p = d.find(name);
        if (p->is_reference()) return std::nullopt;
        return p->value;
    };
    for (const auto& p : d.parameters) {
        if (p.is_reference()) {
            const auto* host = problem.find(p.reference);
            if (host == nullptr || !host->epistemic() || host->name == q.name) {
                emit("parameter reference must name an epistemic quantity");
                continue;
            }
            if (requires_positive(d.family, p.name) && host->range.lower <= 0.0)
                emit("referenced range admits invalid parameter");
        } else if (requires_positive(d.family, p.name) && !(p.value > 0.0)) {
            emit("invalid distribution parameter");
        }
    }
    if (d.family == Family::uniform || d.family == Family::beta) {
        auto lo = value_of("lower");
        auto hi = value_of("upper");
        if (lo && hi && !(*lo < *hi)) emit("invalid distribution parameter");
    }
}

}  // namespace

std::vector<Diagnostic> validate(const UQProblem& problem) {
    std::vector<Diagnostic> out;
    if (problem.quantities.empty()) out.push_back({"", "at least one quantity required"});

    std::set<std::string> seen;
    for (const auto& q : problem.quantities) {
        if (!seen.insert(q.name).second) out.push_back({q.name, "duplicate quantity name"});
        if (!(q.range.lower < q.range.upper)) out.push_back({q.name, "range lower must be below upper"});
        if (q.epistemic()) {
            if (q.distribution) out.push_back({q.name, "epistemic quantity cannot carry a distribution"});
            check_moments(q, out);
        } else {
            if (!q.moments.empty()) out.push_back({q.name, "aleatory quantity cannot carry moment constraints"});
            if (!q.distribution)
                out.push_back({q.name, "aleatory quantity requires a distribution"});
            else
                check_distribution(problem, q, out);
        }
    }

    if (!problem.quantities.empty()) {
        try {
            (void)bind_response(problem);
        } catch (const Error& e) {
            out.push_back({"", std::string("response cannot be bound: ") + e.what()});
        }
    }
    return out;
}

int dirac_term_count(const UncertainQuantity& q) {
    if (!q.epistemic()) throw Error("term count undefined for aleatory quantity");
    return 1 + static_cast<int>(q.moments.size());
}

}  // namespace ouq
