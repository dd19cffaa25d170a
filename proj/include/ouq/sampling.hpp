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
#include <span>
#include <vector>

#include "ouq/distributions.hpp"
#include "ouq/response.hpp"
#include "ouq/uncertainty_model.hpp"

namespace ouq {

/// Resolved aleatory quantities of a problem: one distribution per aleatory
/// slot of the full input vector, all parameters fixed.
struct AleatoryBlock {
    std::vector<Distribution> distributions;
    std::vector<std::size_t> slots;

    [[nodiscard]] std::size_t size() const noexcept { return slots.size(); }
};

/// Builds the aleatory block of `problem`, substituting imprecise parameters
/// from the epistemic entries of `z`.
[[nodiscard]] AleatoryBlock make_aleatory_block(const UQProblem& problem, std::span<const double> z);

[[nodiscard]] std::vector<double> to_standard_normal(const AleatoryBlock& block, std::span<const double> physical);
[[nodiscard]] std::vector<double> from_standard_normal(const AleatoryBlock& block, std::span<const double> u);

enum class EstimatorMethod { crude_mc, line_sampling };

/// How line sampling places the line base points in the hyperplane
/// orthogonal to the important direction: independent normal draws, a
/// randomly shifted Sobol sequence, or a randomly shifted Korobov lattice
/// with the tent transform. The low-discrepancy variants report the
/// independent-sample standard error, which is conservative for them.
enum class LineBases { pseudo_random, quasi_random, lattice };

/// Important direction for line sampling: the normalized negative gradient
/// of g at the standard-normal origin, or that direction refined by
/// minimizing the distance to the limit state along rays from the origin
/// (the design-point direction, far lower variance on curved limit states).
enum class LineDirection { origin_gradient, design_point };

struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::line_sampling;
    std::uint64_t n_samples = 10000;
    std::uint64_t n_lines = 50;
    std::uint64_t seed = 1;
    double root_tolerance = 1e-6;
    LineBases bases = LineBases::quasi_random;
    LineDirection direction = LineDirection::design_point;

    void validate() const;
    friend bool operator==(const EstimatorConfig&, const EstimatorConfig&) = default;
};

struct ProbabilityEstimate {
    double p = 0.0;
    double std_error = 0.0;
    /// Lines without a sign change within the scan range (counted as p_i = 0).
    std::uint64_t unresolved_lines = 0;
    bool direction_refreshed = false;
};

struct ExpectationEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// P[g(z) <= 0] over the aleatory block with the remaining entries of `z` fixed.
[[nodiscard]] ProbabilityEstimate chi_failure(const ResponseFn& g, std::span<const double> z,
                                              const AleatoryBlock& block, const EstimatorConfig& cfg);

/// E[M(z)] over the aleatory block by Monte Carlo (cfg.n_samples draws).
[[nodiscard]] ExpectationEstimate chi_expectation(const ResponseFn& model, std::span<const double> z,
                                                  const AleatoryBlock& block, const EstimatorConfig& cfg);

}  // namespace ouq
