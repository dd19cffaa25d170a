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
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ouq/rbdo.hpp"

namespace ouq {

/// Solver settings stored alongside a problem. Command-line flags override
/// them; the effective values are echoed into every result document.
struct RunSettings {
    std::uint64_t seed = 1;
    EstimatorConfig estimator;
    /// Inner (bound) optimizer; bounds and seed are filled per run.
    OptimizerConfig inner;
    /// Outer (design) optimizer; strategy bisection uses only the tolerance.
    OptimizerConfig outer;
    double bisection_tolerance = 0.05;
    double penalty_weight = 1e6;
    BoundOptions bound;

    friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::variant<UQProblem, DesignProblem> problem;
    RunSettings settings;

    [[nodiscard]] bool is_design() const noexcept { return std::holds_alternative<DesignProblem>(problem); }
};

/// Solver configuration for one run: every stream seed is derived from `seed`.
[[nodiscard]] SolveConfig solve_config(const RunSettings& settings, std::uint64_t seed);

[[nodiscard]] nlohmann::ordered_json render(const UQProblem& problem);
[[nodiscard]] nlohmann::ordered_json render(const DesignProblem& problem);
[[nodiscard]] nlohmann::ordered_json render(const RunSettings& settings);
[[nodiscard]] nlohmann::ordered_json render(const Scenario& scenario);

/// Parsers throw ouq::Error naming the offending path on malformed input.
[[nodiscard]] UQProblem parse_uq_problem(const nlohmann::ordered_json& doc);
[[nodiscard]] DesignProblem parse_design_problem(const nlohmann::ordered_json& doc);
[[nodiscard]] RunSettings parse_settings(const nlohmann::ordered_json& doc);
[[nodiscard]] Scenario parse_scenario(const nlohmann::ordered_json& doc);

[[nodiscard]] Scenario read_scenario_file(const std::string& path);
void write_scenario_file(const Scenario& scenario, const std::string& path);

/// Benchmark and synthetic scenarios, sorted by name.
[[nodiscard]] std::vector<std::string> builtin_scenario_names();
[[nodiscard]] Scenario builtin_scenario(const std::string& name);

/// A built-in name or a path to a scenario file.
[[nodiscard]] Scenario load_scenario(const std::string& name_or_path);

/// Validation messages for whichever problem the scenario holds.
[[nodiscard]] std::vector<std::string> check_scenario(const Scenario& scenario);

}  // namespace ouq
