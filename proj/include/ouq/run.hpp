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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ouq/scenario_io.hpp"

namespace ouq {

enum class RunMode { bounds, rbdo, check, list, export_scenario };

[[nodiscard]] std::string_view to_string(RunMode mode);
[[nodiscard]] RunMode run_mode_from_string(std::string_view name);

/// Everything one invocation needs. Unset overrides keep the scenario's
/// own settings.
struct RunManifest {
    std::string scenario;
    RunMode mode = RunMode::bounds;
    std::size_t repetitions = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> lines;
    std::optional<std::size_t> population;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> outer_population;
    std::optional<std::size_t> outer_iterations;
    std::optional<EstimatorMethod> method;
    /// Design at which bounds mode evaluates a design scenario.
    std::vector<double> theta;
    /// Result document (or exported scenario) path; empty writes to stdout.
    std::string output;
    /// Worker threads; 0 keeps the hardware default. Never echoed into
    /// results, which do not depend on it.
    unsigned threads = 0;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

/// Scenario settings with the manifest's overrides applied.
[[nodiscard]] RunSettings effective_settings(const Scenario& scenario, const RunManifest& manifest);

/// Runs bounds or rbdo mode and returns the result document. Repetition r
/// uses master seed + r. The wall-clock time and timestamp live only under
/// meta.timestamp. Throws ouq::Error on invalid input.
[[nodiscard]] nlohmann::ordered_json run_document(const RunManifest& manifest, const Scenario& scenario,
                                                  int& exit_code);

/// Full command: dispatches on mode, writes output, reports problems on
/// `err`, and returns 0 on success, 2 for an infeasible design problem and
/// 1 on any error.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace ouq
