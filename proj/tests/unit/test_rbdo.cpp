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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "ouq/column_benchmark.hpp"
#include "ouq/error.hpp"
#include "ouq/rbdo.hpp"
#include "ouq/rng.hpp"

using namespace ouq;

namespace {

UncertainQuantity interval(const std::string& name, double lo, double hi) {
    UncertainQuantity q;
    q.name = name;
    q.range = {lo, hi};
    return q;
}

UncertainQuantity standard_normal(const std::string& name) {
    UncertainQuantity q;
    q.name = name;
    q.range = {-40.0, 40.0};
    q.classification = Classification::aleatory;
    q.distribution = DistributionSpec{Family::normal, {{"mean", 0.0, ""}, {"sd", 1.0, ""}}};
    return q;
}

// min theta s.t. P[theta - yhat <= 0] <= p_adm, yhat ~ N(0, 1).
DesignProblem shift_toy(double p_adm) {
    DesignProblem d;
    d.name = "shift";
    DesignVariable theta;
    theta.name = "theta";
    theta.lower = 0.0;
    theta.upper = 4.0;
    d.variables = {theta};
    d.cost.response = {"linear", {{"d_theta", 1.0}}};
    d.reliability.quantities = {standard_normal("yhat")};
    d.reliability.response = {"linear", {{"d_theta", 1.0}, {"c_yhat", -1.0}}};
    d.p_adm = p_adm;
    return d;
}

SolveConfig small(Strategy outer) {
    SolveConfig c;
    c.outer.strategy = outer;
    c.outer.population = 12;
    c.outer.max_iterations = 30;
    c.inner.population = 10;
    c.inner.max_iterations = 10;
    c.estimator.method = EstimatorMethod::line_sampling;
    c.estimator.n_lines = 20;
    return c;
}

DesignProblem coupled(CouplingTarget target, double width) {
    DesignProblem d;
    d.name = "coupled";
    DesignVariable v;
    v.name = "w";
    v.lower = 1000.0;
    v.upper = 2000.0;
    v.coupling = Coupling{"q", target, 1, MomentKind::classical, width};
    d.variables = {v};
    d.cost.response = {"linear", {{"d_w", 1.0}}};
    auto q = interval("q", 0.0, 3000.0);
    q.moments = {{1, MomentKind::classical, 1000.0, 2000.0}};
    d.reliability.quantities = {q};
    d.reliability.response = {"linear", {{"c0", 2500.0}, {"c_q", -1.0}}};
    return d;
}

}  // namespace

TEST_CASE("range coupling centres the interval on the design value") {
    const auto d = coupled(CouplingTarget::range, 200.0);
    const std::vector<double> theta = {1700.0};
    const auto p = resolve_coupling(d, theta);
    CHECK(p.quantities[0].range.lower == 1600.0);
    CHECK(p.quantities[0].range.upper == 1800.0);
    CHECK(p.response.params.at("w") == 1700.0);
}

TEST_CASE("moment coupling centres the moment bound") {
    const auto d = coupled(CouplingTarget::moment, 200.0);
    const std::vector<double> theta = {1700.0};
    const auto p = resolve_coupling(d, theta);
    REQUIRE(p.quantities[0].moments.size() == 1);
    CHECK(p.quantities[0].moments[0].lower == 1600.0);
    CHECK(p.quantities[0].moments[0].upper == 1800.0);
    CHECK(p.quantities[0].range == Range{0.0, 3000.0});
}

TEST_CASE("uncoupled design leaves the descriptors unchanged") {
    auto d = coupled(CouplingTarget::range, 200.0);
    d.variables[0].coupling.reset();
    const std::vector<double> theta = {1700.0};
    const auto p = resolve_coupling(d, theta);
    CHECK(p.quantities == d.reliability.quantities);
}

TEST_CASE("coupled moment interval outside the range is rejected") {
    auto d = coupled(CouplingTarget::moment, 200.0);
    d.reliability.quantities[0].range = {0.0, 1750.0};
    const std::vector<double> theta = {1700.0};
    CHECK_THROWS_AS((void)resolve_coupling(d, theta), Error);
}

TEST_CASE("design validation") {
    CHECK(validate(shift_toy(0.05)).empty());
    auto d = shift_toy(0.05);
    d.p_adm = 0.0;
    CHECK_FALSE(validate(d).empty());
    d = shift_toy(0.05);
    d.variables[0].lower = 5.0;
    CHECK_FALSE(validate(d).empty());
    d = shift_toy(0.05);
    d.variables[0].coupling = Coupling{"nope", CouplingTarget::range, 1, MomentKind::classical, 1.0};
    CHECK_FALSE(validate(d).empty());
}

TEST_CASE("evaluate design on the deterministic toy") {
    const auto d = shift_toy(0.05);
    const std::vector<double> theta = {1.0};
    const auto e = evaluate_design(d, theta, small(Strategy::bisection));
    CHECK(e.cost_value == 1.0);
    CHECK(e.pof_upper == doctest::Approx(0.15865525393145705141).epsilon(1e-5));
    CHECK_FALSE(e.feasible);
}

TEST_CASE("bisection on the deterministic toy") {
    const auto r = solve(shift_toy(0.05), small(Strategy::bisection));
    REQUIRE(r.status == SolveStatus::optimal);
    REQUIRE(r.best);
    CHECK(r.best->feasible);
    CHECK(r.best->theta[0] >= 1.6448536269514729 - 1e-6);
    CHECK(r.best->theta[0] <= 1.6448536269514729 + 0.05);
}

TEST_CASE("evolutionary outer search on the deterministic toy") {
    const auto r = solve(shift_toy(0.05), small(Strategy::self_adaptive_de));
    REQUIRE(r.status == SolveStatus::optimal);
    CHECK(r.best->feasible);
    CHECK(r.best->theta[0] == doctest::Approx(1.6448536269514729).epsilon(1e-2));
}

TEST_CASE("infeasible design problem") {
    for (auto s : {Strategy::bisection, Strategy::self_adaptive_de}) {
        const auto r = solve(shift_toy(1e-12), small(s));
        CHECK(r.status == SolveStatus::infeasible);
        CHECK_FALSE(r.best);
        CHECK_FALSE(r.message.empty());
    }
}

TEST_CASE("bisection requires one continuous variable") {
    auto d = shift_toy(0.05);
    d.variables.push_back(d.variables[0]);
    d.variables[1].name = "other";
    CHECK_THROWS_AS((void)solve(d, small(Strategy::bisection)), Error);
}

TEST_CASE("maximization with a coupled mean") {
    DesignProblem d;
    d.name = "coupled_mean";
    DesignVariable m;
    m.name = "m";
    m.lower = 1.0;
    m.upper = 4.0;
    m.coupling = Coupling{"k", CouplingTarget::moment, 1, MomentKind::classical, 1.0};
    d.variables = {m};
    d.direction = Direction::maximize;
    d.cost.response = {"linear", {{"d_m", 1.0}}};
    auto k = interval("k", 0.0, 5.0);
    k.moments = {{1, MomentKind::classical, 2.0, 3.0}};
    d.reliability.quantities = {k};
    d.reliability.response = {"linear", {{"c0", 4.5}, {"c_k", -1.0}}};
    d.p_adm = 0.5;
    auto cfg = small(Strategy::self_adaptive_de);
    cfg.inner.population = 20;
    cfg.inner.max_iterations = 40;
    const auto r = solve(d, cfg);
    REQUIRE(r.status == SolveStatus::optimal);
    // The inner search approaches the supremum from below.
    CHECK(r.best->theta[0] <= 1.75 + 5e-3);
    CHECK(r.best->theta[0] >= 1.70);
}

TEST_CASE("solve is deterministic") {
    const auto a = solve(shift_toy(0.05), small(Strategy::self_adaptive_de));
    const auto b = solve(shift_toy(0.05), small(Strategy::self_adaptive_de));
    CHECK(a.best->theta == b.best->theta);
    CHECK(a.best->pof_upper == b.best->pof_upper);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) CHECK(a.history[i].theta == b.history[i].theta);
}

TEST_CASE("property: unique-integer designs never repeat") {
    DesignProblem d = shift_toy(0.05);
    DesignVariable ids;
    ids.name = "ids";
    ids.kind = VariableKind::unique_integers;
    ids.lower = 0.0;
    ids.upper = 4.0;
    ids.count = 4;
    DesignVariable pick;
    pick.name = "pick";
    pick.kind = VariableKind::integer_set;
    pick.choices = {3, 7, 11};
    d.variables = {d.variables[0], ids, pick};
    REQUIRE(d.design_size() == 6);
    Rng rng(11);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> unit(6);
        for (auto& u : unit) u = rng.uniform() < 0.1 ? 1.0 : rng.uniform();
        const auto x = decode_design(d, unit);
        REQUIRE(x.size() == 6);
        CHECK(x[0] >= 0.0);
        CHECK(x[0] <= 4.0);
        std::set<double> seen(x.begin() + 1, x.begin() + 5);
        CHECK(seen.size() == 4);
        for (std::size_t i = 1; i < 5; ++i) {
            CHECK(x[i] == std::floor(x[i]));
            CHECK(x[i] >= 0.0);
            CHECK(x[i] <= 4.0);
        }
        CHECK((x[5] == 3.0 || x[5] == 7.0 || x[5] == 11.0));
    }
}

TEST_CASE("multi-valued variables inject indexed parameters") {
    DesignProblem d = shift_toy(0.05);
    DesignVariable ids;
    ids.name = "ids";
    ids.kind = VariableKind::unique_integers;
    ids.lower = 0.0;
    ids.upper = 4.0;
    ids.count = 2;
    d.variables.push_back(ids);
    const std::vector<double> theta = {1.0, 3.0, 0.0};
    const auto p = resolve_coupling(d, theta);
    CHECK(p.response.params.at("theta") == 1.0);
    CHECK(p.response.params.at("ids_0") == 3.0);
    CHECK(p.response.params.at("ids_1") == 0.0);
}

TEST_CASE("column designs on either side of the optimum") {
    const auto d = column::scenario(column::ScenarioKind::ouq_g);
    auto cfg = small(Strategy::bisection);
    cfg.inner.population = 20;
    cfg.inner.max_iterations = 30;
    const std::vector<double> wide = {350.0};
    const auto e = evaluate_design(d, wide, cfg);
    CHECK(e.cost_value == doctest::Approx(14000.0).epsilon(1e-12));
    CHECK(e.feasible);
    const std::vector<double> narrow = {300.0};
    CHECK_FALSE(evaluate_design(d, narrow, cfg).feasible);
}
