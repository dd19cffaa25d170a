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

#include <algorithm>
#include <functional>
#include <map>

#include "ouq/column_benchmark.hpp"
#include "ouq/error.hpp"
#include "ouq/scenario_io.hpp"

namespace ouq {

namespace {

UncertainQuantity standard_normal(const std::string& name) {
    UncertainQuantity q;
    q.name = name;
    q.range = {-10.0, 10.0};
    q.classification = Classification::aleatory;
    q.distribution = DistributionSpec{Family::normal, {{"mean", 0.0, ""}, {"sd", 1.0, ""}}};
    return q;
}

UncertainQuantity interval(const std::string& name, double lo, double hi) {
    UncertainQuantity q;
    q.name = name;
    q.range = {lo, hi};
    return q;
}

Scenario benchmark(column::ScenarioKind kind) {
    Scenario s;
    s.name = column::to_string(kind);
    s.problem = column::scenario(kind);
    switch (kind) {
        case column::ScenarioKind::ouq_g:
            s.description = "Buckling column; environmental load Gumbel with imprecise location and scale.";
            break;
        case column::ScenarioKind::ouq_e_range_100_500:
            s.description = "Buckling column; environmental load with three moment bounds on [100, 500] kN.";
            break;
        case column::ScenarioKind::ouq_e_range_0_1000:
            s.description = "Buckling column; environmental load with three moment bounds on [0, 1000] kN.";
            break;
    }
    s.settings.estimator.n_lines = 50;
    s.settings.inner.population = 50;
    s.settings.inner.max_iterations = 100;
    s.settings.outer.strategy = Strategy::bisection;
    s.settings.bisection_tolerance = 0.05;
    return s;
}

// y in [0, 1] with E[y] = 0.7; failure y <= 0.5. Upper bound 0.6.
Scenario toy_mean_constrained() {
    Scenario s;
    s.name = "toy_mean_constrained";
    s.description = "Interval quantity with a precise mean and an indicator failure event.";
    UQProblem p;
    UncertainQuantity y = interval("y", 0.0, 1.0);
    y.moments = {{1, MomentKind::classical, 0.7, 0.7}};
    p.quantities = {y};
    p.response = {"linear", {{"c0", -0.5}, {"c_y", 1.0}}};
    s.problem = p;
    return s;
}

// g = yhat - 1 with yhat standard normal: P[g <= 0] = Phi(1).
Scenario toy_aleatory_only() {
    Scenario s;
    s.name = "toy_aleatory_only";
    s.description = "Single standard normal quantity; no epistemic dimensions.";
    UQProblem p;
    p.quantities = {standard_normal("yhat")};
    p.response = {"linear", {{"c0", -1.0}, {"c_yhat", 1.0}}};
    s.problem = p;
    return s;
}

// min theta^2 s.t. sup P[theta - yhat - shift <= 0] <= 0.05, shift in [0, 0.5].
// Optimum theta = 0.5 + Phi^-1(0.95).
Scenario toy_design_shift() {
    Scenario s;
    s.name = "toy_design_shift";
    s.description = "Quadratic cost, normal load plus an interval shift, evolutionary outer search.";
    DesignProblem d;
    d.name = s.name;
    DesignVariable theta;
    theta.name = "theta";
    theta.lower = 0.0;
    theta.upper = 4.0;
    d.variables = {theta};
    d.cost.response = {"quadratic", {{"d_theta", 1.0}}};
    d.reliability.quantities = {standard_normal("yhat"), interval("shift", 0.0, 0.5)};
    d.reliability.response = {"linear", {{"d_theta", 1.0}, {"c_yhat", -1.0}, {"c_shift", -1.0}}};
    d.p_adm = 0.05;
    s.problem = d;
    s.settings.inner.population = 10;
    s.settings.inner.max_iterations = 20;
    s.settings.outer.population = 12;
    s.settings.outer.max_iterations = 30;
    return s;
}

// max m s.t. sup P[k >= 4.5] <= 0.5 where k in [0, 5], E[k] in [m - 0.5, m + 0.5].
// The worst case puts mass on {0, 4.5}, so the optimum is m = 1.75.
Scenario toy_coupled_mean() {
    Scenario s;
    s.name = "toy_coupled_mean";
    s.description = "Design variable sets the midpoint of a mean bound; maximization.";
    DesignProblem d;
    d.name = s.name;
    DesignVariable m;
    m.name = "m";
    m.lower = 1.0;
    m.upper = 4.0;
    m.coupling = Coupling{"k", CouplingTarget::moment, 1, MomentKind::classical, 1.0};
    d.variables = {m};
    d.direction = Direction::maximize;
    d.cost.response = {"linear", {{"d_m", 1.0}}};
    UncertainQuantity k = interval("k", 0.0, 5.0);
    k.moments = {{1, MomentKind::classical, 2.0, 3.0}};
    d.reliability.quantities = {k};
    d.reliability.response = {"linear", {{"c0", 4.5}, {"c_k", -1.0}}};
    d.p_adm = 0.5;
    s.problem = d;
    s.settings.inner.population = 20;
    s.settings.inner.max_iterations = 40;
    s.settings.outer.population = 12;
    s.settings.outer.max_iterations = 30;
    return s;
}

const std::map<std::string, std::function<Scenario()>>& builtins() {
    static const std::map<std::string, std::function<Scenario()>> table = [] {
        std::map<std::string, std::function<Scenario()>> t;
        for (auto kind : column::scenario_kinds()) t[column::to_string(kind)] = [kind] { return benchmark(kind); };
        t["toy_aleatory_only"] = toy_aleatory_only;
        t["toy_coupled_mean"] = toy_coupled_mean;
        t["toy_design_shift"] = toy_design_shift;
        t["toy_mean_constrained"] = toy_mean_constrained;
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : builtins()) names.push_back(name);
    return names;
}

Scenario builtin_scenario(const std::string& name) {
    const auto it = builtins().find(name);
    if (it == builtins().end()) throw Error("unknown built-in scenario '" + name + "'");
    return it->second();
}

}  // namespace ouq
