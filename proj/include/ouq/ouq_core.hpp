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
#include <vector>

#include "ouq/canonical_moments.hpp"
#include "ouq/dirac.hpp"
#include "ouq/optimizer.hpp"
#include "ouq/response.hpp"
#include "ouq/sampling.hpp"
#include "ouq/uncertainty_model.hpp"

namespace ouq {

enum class BoundKind { lower, upper };

[[nodiscard]] std::string_view to_string(BoundKind kind);

/// How estimator seeds vary across objective evaluations of one bound run.
enum class SeedPolicy {
    /// The same estimator seed everywhere (common random numbers), so the
    /// optimizer compares candidates on identical sample sets.
    common,
    /// A seed derived from (seed, generation, member) for every evaluation.
    per_evaluation,
};

struct BoundOptions {
    Parameterization parameterization = Parameterization::mixed;
    SeedPolicy seeding = SeedPolicy::common;
    /// Largest tensor product of support points evaluated exactly.
    std::size_t enumeration_cap = 100000;

    friend bool operator==(const BoundOptions&, const BoundOptions&) = default;
};

struct JointEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t combinations = 0;
    std::size_t integrations = 0;  ///< distinct combinations actually integrated
};

/// Mixture of the per-combination failure probabilities over the tensor
/// product of the epistemic measures (one per epistemic quantity, in problem
/// order). Throws when the product exceeds the enumeration cap.
[[nodiscard]] JointEstimate joint_probability(const UQProblem& problem, const ResponseFn& g,
                                              std::span<const DiracMeasure> measures, const EstimatorConfig& cfg,
                                              std::size_t enumeration_cap = BoundOptions{}.enumeration_cap);
[[nodiscard]] JointEstimate joint_probability(const UQProblem& problem, std::span<const DiracMeasure> measures,
                                              const EstimatorConfig& cfg);

/// Same mixture with the aleatory expectation of the response.
[[nodiscard]] JointEstimate joint_expectation(const UQProblem& problem, const ResponseFn& model,
                                              std::span<const DiracMeasure> measures, const EstimatorConfig& cfg,
                                              std::size_t enumeration_cap = BoundOptions{}.enumeration_cap);
[[nodiscard]] JointEstimate joint_expectation(const UQProblem& problem, std::span<const DiracMeasure> measures,
                                              const EstimatorConfig& cfg);

struct NamedMeasure {
    std::string quantity;
    DiracMeasure measure;
};

struct BoundResult {
    BoundKind which = BoundKind::upper;
    double value = 0.0;
    /// Extremal measures, one per epistemic quantity.
    std::vector<NamedMeasure> certificate;
    double estimator_error = 0.0;
    std::vector<GenerationRecord> trace;
    std::size_t evaluations = 0;
    /// Estimator seed used when re-evaluating the certificate.
    std::uint64_t estimator_seed = 0;
};

/// Sharpest bound on P[g <= 0] (failure event) or E[M] (expectation event)
/// over all admissible product measures. The optimizer searches the unit box
/// of the canonical-moment coordinates; opt_cfg.bounds is ignored.
[[nodiscard]] BoundResult sharpest_bound(const UQProblem& problem, BoundKind which, const OptimizerConfig& opt_cfg,
                                         const EstimatorConfig& est_cfg, const BoundOptions& options = {});

}  // namespace ouq
