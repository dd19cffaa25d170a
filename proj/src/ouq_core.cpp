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

#include "ouq/ouq_core.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ouq/error.hpp"
#include "ouq/rng.hpp"

namespace ouq {

std::string_view to_string(BoundKind kind) { return kind == BoundKind::lower ? "lower" : "upper"; }

namespace {

// Weighted sum of `integrate(z)` over every support-point combination.
template <class Integrate>
JointEstimate enumerate(const UQProblem& problem, std::span<const DiracMeasure> measures, std::size_t cap,
                        Integrate&& integrate) {
    const auto epistemic = problem.epistemic_indices();
    if (measures.size() != epistemic.size()) throw Error("expected one measure per epistemic quantity");

    std::size_t total = 1;
    for (const auto& m : measures) {
        if (total > cap / m.size()) {
            std::ostringstream msg;
            msg << "tensor product of support points exceeds the enumeration cap of " << cap;
            throw Error(msg.str());
        }
        total *= m.size();
    }
    if (total > cap) throw Error("tensor product of " + std::to_string(total) + " support points exceeds the cap");

    std::vector<double> z(problem.quantities.size(), 0.0);
    std::vector<std::size_t> digit(measures.size(), 0);
    std::map<std::vector<double>, std::pair<double, double>> memo;
    JointEstimate out;
    out.combinations = total;
    double variance = 0.0;
    for (std::size_t c = 0; c < total; ++c) {
        double weight = 1.0;
        std::vector<double> key(measures.size());
        for (std::size_t m = 0; m < measures.size(); ++m) {
            key[m] = measures[m].points()[digit[m]];
            weight *= measures[m].weights()[digit[m]];
            z[epistemic[m]] = key[m];
        }
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(std::move(key), integrate(std::span<const double>(z))).first;
            ++out.integrations;
        }
        out.value += weight * it->second.first;
        variance += weight * weight * it->second.second * it->second.second;

        for (std::size_t m = 0; m < digit.size(); ++m) {
            if (++digit[m] < measures[m].size()) break;
            digit[m] = 0;
        }
    }
    out.std_error = std::sqrt(variance);
    return out;
}

}  // namespace

JointEstimate joint_probability(const UQProblem& problem, const ResponseFn& g, std::span<const DiracMeasure> measures,
                                const EstimatorConfig& cfg, std::size_t enumeration_cap) {
    return enumerate(problem, measures, enumeration_cap, [&](std::span<const double> z) {
        const AleatoryBlock block = make_aleatory_block(problem, z);
        const ProbabilityEstimate e = chi_failure(g, z, block, cfg);
        return std::pair{e.p, e.std_error};
    });
}

JointEstimate joint_probability(const UQProblem& problem, std::span<const DiracMeasure> measures,
                                const EstimatorConfig& cfg) {
    return joint_probability(problem, bind_response(problem), measures, cfg);
}

JointEstimate joint_expectation(const UQProblem& problem, const ResponseFn& model,
                                std::span<const DiracMeasure> measures, const EstimatorConfig& cfg,
                                std::size_t enumeration_cap) {
    return enumerate(problem, measures, enumeration_cap, [&](std::span<const double> z) {
        const AleatoryBlock block = make_aleatory_block(problem, z);
        const ExpectationEstimate e = chi_expectation(model, z, block, cfg);
        return std::pair{e.mean, e.std_error};
    });
}

JointEstimate joint_expectation(const UQProblem& problem, std::span<const DiracMeasure> measures,
                                const EstimatorConfig& cfg) {
    return joint_expectation(problem, bind_response(problem), measures, cfg);
}

BoundResult sharpest_bound(const UQProblem& problem, BoundKind which, const OptimizerConfig& opt_cfg,
                           const EstimatorConfig& est_cfg, const BoundOptions& options) {
    if (const auto diags = validate(problem); !diags.empty()) {
        std::string msg = "problem is invalid:";
        for (const auto& d : diags) msg += " [" + d.quantity + ": " + d.rule + "]";
        throw Error(msg);
    }
    est_cfg.validate();

    const ResponseFn response = bind_response(problem);
    const auto epistemic = problem.epistemic_indices();
    std::vector<MeasureCoder> coders;
    std::vector<std::size_t> offsets;
    std::size_t dim = 0;
    for (std::size_t idx : epistemic) {
        coders.emplace_back(problem.quantities[idx], options.parameterization);
        offsets.push_back(dim);
        dim += coders.back().dimension();
    }

    auto decode = [&](std::span<const double> x) -> std::optional<std::vector<DiracMeasure>> {
        std::vector<DiracMeasure> measures;
        measures.reserve(coders.size());
        for (std::size_t m = 0; m < coders.size(); ++m) {
            auto measure = coders[m].decode(x.subspan(offsets[m], coders[m].dimension()));
            if (!measure) return std::nullopt;
            measures.push_back(std::move(*measure));
        }
        return measures;
    };

    auto estimate = [&](const std::vector<DiracMeasure>& measures, std::uint64_t seed) {
        EstimatorConfig cfg = est_cfg;
        cfg.seed = seed;
        return problem.event == Event::failure
                   ? joint_probability(problem, response, measures, cfg, options.enumeration_cap)
                   : joint_expectation(problem, response, measures, cfg, options.enumeration_cap);
    };

    const double sign = which == BoundKind::upper ? -1.0 : 1.0;
    auto seed_for = [&](const EvalContext& ctx) {
        return options.seeding == SeedPolicy::common ? est_cfg.seed
                                                     : derive_seed(est_cfg.seed, ctx.generation, ctx.member);
    };
    // The winning evaluation's seed is not recoverable from the optimizer, so
    // under per-evaluation seeding the certificate is re-estimated with the
    // master seed.
    const ContextObjective objective = [&](std::span<const double> x, const EvalContext& ctx) {
        const auto measures = decode(x);
        if (!measures) return std::numeric_limits<double>::infinity();
        return sign * estimate(*measures, seed_for(ctx)).value;
    };

    OptimizerConfig cfg = opt_cfg;
    cfg.bounds.assign(dim, {0.0, 1.0});
    const OptimizationResult opt = minimize(objective, cfg);

    if (!std::isfinite(opt.best_f)) throw Error("optimizer found no admissible measure");
    const auto measures = decode(opt.best_x);
    if (!measures) throw Error("optimizer found no admissible measure");

    BoundResult out;
    out.which = which;
    out.estimator_seed = est_cfg.seed;
    const JointEstimate final_estimate = estimate(*measures, out.estimator_seed);
    out.value = final_estimate.value;
    out.estimator_error = final_estimate.std_error;
    for (std::size_t m = 0; m < coders.size(); ++m)
        out.certificate.push_back({problem.quantities[epistemic[m]].name, (*measures)[m]});
    out.trace = opt.trace;
    out.evaluations = opt.evaluations + 1;
    return out;
}

}  // namespace ouq
