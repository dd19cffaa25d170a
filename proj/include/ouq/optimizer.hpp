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

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ouq {

enum class Strategy { self_adaptive_de, gradient_descent, bisection };

struct OptimizerConfig {
    std::size_t population = 50;
    /// Fixed generation budget; there is no early stop.
    std::size_t max_iterations = 100;
    std::uint64_t seed = 1;
    /// Per-coordinate [low, high].
    std::vector<std::pair<double, double>> bounds;
    Strategy strategy = Strategy::self_adaptive_de;
    /// Floor of the linear population reduction.
    std::size_t min_population = 4;

    void validate() const;
    friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Identifies one objective evaluation inside a run.
struct EvalContext {
    std::size_t generation = 0;
    std::size_t member = 0;
};

using Objective = std::function<double(std::span<const double>)>;
using ContextObjective = std::function<double(std::span<const double>, const EvalContext&)>;

inline constexpr std::size_t kDeStrategies = 4;

struct GenerationRecord {
    double best_f = 0.0;
    std::size_t population = 0;
    double f_memory_min = 0.0, f_memory_max = 0.0;
    double cr_memory_min = 0.0, cr_memory_max = 0.0;
    std::array<double, kDeStrategies> strategy_probability{};
};

struct OptimizationResult {
    std::vector<double> best_x;
    double best_f = 0.0;
    std::size_t evaluations = 0;
    std::vector<GenerationRecord> trace;
};

/// Box-constrained global minimization. Non-finite objective values count as
/// +infinity. Every evaluated point lies inside the bounds and the run is
/// deterministic for a given seed, whatever the worker count.
///
/// The self-adaptive strategy is a success-history differential evolution
/// with four competing mutation/crossover variants (rand/1/bin, best/1/bin,
/// current-to-pbest/1/bin with archive, rand/1/exp), per-variant F/CR
/// memories and linear population reduction.
[[nodiscard]] OptimizationResult minimize(const ContextObjective& objective, const OptimizerConfig& cfg);
[[nodiscard]] OptimizationResult minimize(const Objective& objective, const OptimizerConfig& cfg);

/// Smallest x in [low, high] with f(x) <= target, for f decreasing, found by
/// bisection to within `tol`. Throws if f(low) <= target or f(high) > target.
[[nodiscard]] double minimize_scalar_monotone(const std::function<double(double)>& f, double target, double low,
                                              double high, double tol);

}  // namespace ouq
