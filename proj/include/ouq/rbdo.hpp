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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ouq/ouq_core.hpp"

namespace ouq {

enum class VariableKind { continuous, integer_set, unique_integers };

enum class CouplingTarget { range, moment };

/// Makes an uncertainty descriptor an interval of fixed width centred on the
/// design value: either the quantity's range or one of its moment bounds.
struct Coupling {
    std::string quantity;
    CouplingTarget target = CouplingTarget::range;
    int order = 1;
    MomentKind kind = MomentKind::classical;
    double width = 0.0;

    friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// continuous: a value in [lower, upper].
/// integer_set: one of `choices`.
/// unique_integers: `count` distinct integers in [lower, upper].
struct DesignVariable {
    std::string name;
    VariableKind kind = VariableKind::continuous;
    double lower = 0.0;
    double upper = 1.0;
    std::vector<int> choices;
    std::size_t count = 1;
    std::optional<Coupling> coupling;

    /// Number of entries the variable occupies in the design vector.
    [[nodiscard]] std::size_t width() const noexcept { return kind == VariableKind::unique_integers ? count : 1; }
    friend bool operator==(const DesignVariable&, const DesignVariable&) = default;
};

enum class Direction { minimize, maximize };
enum class CostKind { deterministic, expectation };

/// Deterministic cost: `response` evaluated with the design values as its
/// only parameters. Expectation cost: a bound on E[M] over `problem`, by
/// default the worst case for the optimization direction.
struct CostModel {
    CostKind kind = CostKind::deterministic;
    ResponseSpec response;
    std::optional<UQProblem> problem;
    std::optional<BoundKind> sense;

    friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct DesignProblem {
    std::string name;
    std::vector<DesignVariable> variables;
    CostModel cost;
    UQProblem reliability;
    double p_adm = 1e-3;
    Direction direction = Direction::minimize;

    [[nodiscard]] std::size_t design_size() const;
    friend bool operator==(const DesignProblem&, const DesignProblem&) = default;
};

[[nodiscard]] std::vector<std::string> validate(const DesignProblem& problem);

struct SolveConfig {
    OptimizerConfig outer;
    OptimizerConfig inner;
    EstimatorConfig estimator;
    BoundOptions bound;
    /// Bracket tolerance of the bisection outer search.
    double bisection_tolerance = 0.05;
    /// Penalty added to infeasible candidates in the evolutionary outer search:
    /// penalty_weight * (1 + (pof_upper - p_adm) / p_adm).
    double penalty_weight = 1e6;
};

struct DesignEvaluation {
    std::vector<double> theta;
    double cost_value = 0.0;
    double pof_upper = 0.0;
    double pof_error = 0.0;
    bool feasible = false;
    std::optional<BoundResult> cost_bound;
    BoundResult pof_bound;
};

/// Rewrites the coupled descriptors of `target` for design `theta` and
/// injects every design value into the response parameters under the
/// variable's name (`name_k` for the entries of multi-valued variables).
[[nodiscard]] UQProblem apply_design(const DesignProblem& problem, std::span<const double> theta,
                                     const UQProblem& target);

/// apply_design on the reliability problem.
[[nodiscard]] UQProblem resolve_coupling(const DesignProblem& problem, std::span<const double> theta);

[[nodiscard]] DesignEvaluation evaluate_design(const DesignProblem& problem, std::span<const double> theta,
                                               const SolveConfig& cfg);

/// Maps a point of the unit box onto a design vector. Unique-integer
/// variables are floored and then de-duplicated by moving collisions to the
/// next free value.
[[nodiscard]] std::vector<double> decode_design(const DesignProblem& problem, std::span<const double> unit);

enum class SolveStatus { optimal, infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<DesignEvaluation> best;
    std::vector<DesignEvaluation> history;
    std::vector<GenerationRecord> trace;
    std::string message;
};

/// Outer design loop. cfg.outer.strategy selects the search:
///  bisection: one continuous variable, cost increasing in it, upper PoF
///    decreasing in it; returns the smallest feasible value.
///  self_adaptive_de / gradient_descent: penalized search over the unit box.
/// The best design is always feasible; without one the status is infeasible.
[[nodiscard]] SolveResult solve(const DesignProblem& problem, const SolveConfig& cfg);

}  // namespace ouq
