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

#include "ouq/rbdo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "ouq/error.hpp"

namespace ouq {

namespace {

constexpr double kThetaQuantum = 1e-9;

std::string design_label(std::span<const double> theta) {
    std::ostringstream s;
    s.precision(10);
    s << "design [";
    for (std::size_t i = 0; i < theta.size(); ++i) s << (i ? ", " : "") << theta[i];
    s << "]";
    return s.str();
}

void check_domain(const DesignProblem& problem, std::span<const double> theta) {
    if (theta.size() != problem.design_size()) throw Error("design vector has the wrong length");
    std::size_t k = 0;
    for (const auto& v : problem.variables) {
        switch (v.kind) {
            case VariableKind::continuous:
                if (!(theta[k] >= v.lower && theta[k] <= v.upper))
                    throw Error("variable '" + v.name + "' outside its bounds");
                break;
            case VariableKind::integer_set:
                if (std::find(v.choices.begin(), v.choices.end(), theta[k]) == v.choices.end())
                    throw Error("variable '" + v.name + "' is not one of its choices");
                break;
            case VariableKind::unique_integers: {
                std::set<double> seen;
                for (std::size_t i = 0; i < v.count; ++i) {
                    const double x = theta[k + i];
                    if (x != std::round(x) || x < v.lower || x > v.upper || !seen.insert(x).second)
                        throw Error("variable '" + v.name + "' needs distinct integers within its bounds");
                }
                break;
            }
        }
        k += v.width();
    }
}

double deterministic_cost(const DesignProblem& problem, std::span<const double> theta) {
    UQProblem holder;
    holder.response = problem.cost.response;
    holder = apply_design(problem, theta, holder);
    const ResponseFn fn = ResponseRegistry::global().bind(holder.response, {});
    return fn({});
}

}  // namespace

std::size_t DesignProblem::design_size() const {
    std::size_t n = 0;
    for (const auto& v : variables) n += v.width();
    return n;
}

std::vector<std::string> validate(const DesignProblem& problem) {
    std::vector<std::string> out;
    if (problem.variables.empty()) out.emplace_back("at least one design variable required");
    std::set<std::string> names;
    for (const auto& v : problem.variables) {
        if (!names.insert(v.name).second) out.push_back("duplicate design variable '" + v.name + "'");
        switch (v.kind) {
            case VariableKind::continuous:
                if (!(v.lower < v.upper)) out.push_back("variable '" + v.name + "' needs lower < upper");
                break;
            case VariableKind::integer_set:
                if (v.choices.empty()) out.push_back("variable '" + v.name + "' has no choices");
                break;
            case VariableKind::unique_integers:
                if (v.lower != std::round(v.lower) || v.upper != std::round(v.upper) || v.count < 1 ||
                    static_cast<double>(v.count) > v.upper - v.lower + 1.0)
                    out.push_back("variable '" + v.name + "' cannot hold " + std::to_string(v.count) +
                                  " distinct integers");
                break;
        }
        if (v.coupling) {
            const auto* q = problem.reliability.find(v.coupling->quantity);
            if (q == nullptr && problem.cost.problem) q = problem.cost.problem->find(v.coupling->quantity);
            if (q == nullptr)
                out.push_back("coupling of '" + v.name + "' targets unknown quantity '" + v.coupling->quantity + "'");
            else if (!q->epistemic())
                out.push_back("coupling of '" + v.name + "' targets aleatory quantity '" + q->name + "'");
            if (!(v.coupling->width > 0.0)) out.push_back("coupling of '" + v.name + "' needs a positive width");
            if (v.kind == VariableKind::unique_integers)
                out.push_back("coupling of '" + v.name + "' needs a scalar variable");
        }
    }
    if (!(problem.p_adm > 0.0 && problem.p_adm < 1.0)) out.emplace_back("p_adm must lie in (0, 1)");
    if (problem.reliability.event != Event::failure) out.emplace_back("reliability problem needs the failure event");
    if (problem.cost.kind == CostKind::deterministic) {
        if (!ResponseRegistry::global().contains(problem.cost.response.name))
            out.push_back("unknown cost response '" + problem.cost.response.name + "'");
    } else if (!problem.cost.problem) {
        out.emplace_back("expectation cost needs a problem");
    } else if (problem.cost.problem->event != Event::expectation) {
        out.emplace_back("expectation cost problem needs the expectation event");
    }
    if (!out.empty()) return out;

    // The uncertainty models must be valid once a design is substituted.
    const std::vector<double> mid(problem.design_size(), 0.5);
    try {
        const auto theta = decode_design(problem, mid);
        for (const auto& d : validate(resolve_coupling(problem, theta)))
            out.push_back("reliability: " + d.quantity + ": " + d.rule);
        if (problem.cost.problem)
            for (const auto& d : validate(apply_design(problem, theta, *problem.cost.problem)))
                out.push_back("cost: " + d.quantity + ": " + d.rule);
        if (problem.cost.kind == CostKind::deterministic) (void)deterministic_cost(problem, theta);
    } catch (const Error& e) {
        out.emplace_back(e.what());
    }
    return out;
}

UQProblem apply_design(const DesignProblem& problem, std::span<const double> theta, const UQProblem& target) {
    if (theta.size() != problem.design_size()) throw Error("design vector has the wrong length");
    UQProblem out = target;
    std::size_t k = 0;
    for (const auto& v : problem.variables) {
        if (v.width() == 1) {
            out.response.params[v.name] = theta[k];
        } else {
            for (std::size_t i = 0; i < v.width(); ++i)
                out.response.params[v.name + "_" + std::to_string(i)] = theta[k + i];
        }
        if (v.coupling) {
            const Coupling& c = *v.coupling;
            const auto idx = out.index_of(c.quantity);
            if (idx) {
                UncertainQuantity& q = out.quantities[*idx];
                const double lo = theta[k] - 0.5 * c.width;
                const double hi = theta[k] + 0.5 * c.width;
                const bool in_range = lo >= q.range.lower && hi <= q.range.upper;
                if (c.target == CouplingTarget::range) {
                    if (!in_range)
                        throw Error("coupled interval of variable '" + v.name + "' escapes the range of quantity '" +
                                    q.name + "'");
                    q.range = {lo, hi};
                } else {
                    if (c.order == 1 && c.kind == MomentKind::classical && !in_range)
                        throw Error("coupled mean bound of variable '" + v.name + "' escapes the range of quantity '" +
                                    q.name + "'");
                    auto it = std::find_if(q.moments.begin(), q.moments.end(),
                                           [&](const MomentConstraint& m) { return m.order == c.order; });
                    const MomentConstraint coupled{c.order, c.kind, lo, hi};
                    if (it == q.moments.end())
                        q.moments.push_back(coupled);
                    else
                        *it = coupled;
                }
            }
        }
        k += v.width();
    }
    return out;
}

UQProblem resolve_coupling(const DesignProblem& problem, std::span<const double> theta) {
    return apply_design(problem, theta, problem.reliability);
}

DesignEvaluation evaluate_design(const DesignProblem& problem, std::span<const double> theta, const SolveConfig& cfg) {
    check_domain(problem, theta);
    DesignEvaluation ev;
    ev.theta.assign(theta.begin(), theta.end());
    try {
        ev.pof_bound = sharpest_bound(resolve_coupling(problem, theta), BoundKind::upper, cfg.inner, cfg.estimator,
                                      cfg.bound);
        ev.pof_upper = ev.pof_bound.value;
        ev.pof_error = ev.pof_bound.estimator_error;
        if (problem.cost.kind == CostKind::deterministic) {
            ev.cost_value = deterministic_cost(problem, theta);
        } else {
            const BoundKind sense = problem.cost.sense.value_or(
                problem.direction == Direction::minimize ? BoundKind::upper : BoundKind::lower);
            ev.cost_bound = sharpest_bound(apply_design(problem, theta, *problem.cost.problem), sense, cfg.inner,
                                           cfg.estimator, cfg.bound);
            ev.cost_value = ev.cost_bound->value;
        }
    } catch (const Error& e) {
        throw Error(design_label(theta) + ": " + e.what());
    }
    ev.feasible = ev.pof_upper <= problem.p_adm;
    return ev;
}

std::vector<double> decode_design(const DesignProblem& problem, std::span<const double> unit) {
    if (unit.size() != problem.design_size()) throw Error("unit vector has the wrong length");
    std::vector<double> theta;
    theta.reserve(unit.size());
    std::size_t k = 0;
    for (const auto& v : problem.variables) {
        switch (v.kind) {
            case VariableKind::continuous:
                theta.push_back(std::clamp(v.lower + unit[k] * (v.upper - v.lower), v.lower, v.upper));
                break;
            case VariableKind::integer_set: {
                const auto n = v.choices.size();
                const auto i = std::min(static_cast<std::size_t>(std::max(0.0, unit[k]) * static_cast<double>(n)), n - 1);
                theta.push_back(v.choices[i]);
                break;
            }
            case VariableKind::unique_integers: {
                const auto lo = static_cast<long long>(v.lower);
                const auto n = static_cast<long long>(v.upper) - lo + 1;
                std::set<long long> used;
                for (std::size_t i = 0; i < v.count; ++i) {
                    auto x = std::min(static_cast<long long>(std::max(0.0, unit[k + i]) * static_cast<double>(n)),
                                      n - 1);
                    while (used.count(x) != 0) x = (x + 1) % n;
                    used.insert(x);
                    theta.push_back(static_cast<double>(lo + x));
                }
                break;
            }
        }
        k += v.width();
    }
    return theta;
}

namespace {

class EvaluationCache {
public:
    EvaluationCache(const DesignProblem& problem, const SolveConfig& cfg) : problem_(problem), cfg_(cfg) {}

    DesignEvaluation get(std::span<const double> theta) {
        std::vector<long long> key;
        for (double x : theta) key.push_back(std::llround(x / kThetaQuantum));
        {
            std::lock_guard lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        DesignEvaluation ev = evaluate_design(problem_, theta, cfg_);
        std::lock_guard lock(mutex_);
        entries_.insert_or_assign(key, ev);
        return ev;
    }

private:
    const DesignProblem& problem_;
    const SolveConfig& cfg_;
    std::mutex mutex_;
    std::map<std::vector<long long>, DesignEvaluation> entries_;
};

double signed_cost(const DesignProblem& problem, double cost) {
    return problem.direction == Direction::minimize ? cost : -cost;
}

SolveResult infeasible(SolveResult r, std::string message) {
    r.status = SolveStatus::infeasible;
    r.best.reset();
    r.message = std::move(message);
    return r;
}

SolveResult solve_bisection(const DesignProblem& problem, const SolveConfig& cfg) {
    const DesignVariable& v = problem.variables.front();
    EvaluationCache cache(problem, cfg);
    SolveResult result;
    std::set<double> seen;
    auto eval = [&](double x) {
        const std::vector<double> theta{x};
        DesignEvaluation ev = cache.get(theta);
        if (seen.insert(x).second) result.history.push_back(ev);
        return ev;
    };

    const DesignEvaluation lo = eval(v.lower);
    const DesignEvaluation hi = eval(v.upper);
    if (lo.cost_value > hi.cost_value) throw Error("bisection needs a cost that increases with '" + v.name + "'");
    if (lo.feasible) {
        result.status = SolveStatus::optimal;
        result.best = lo;
        result.message = "lower bound of '" + v.name + "' is feasible";
        return result;
    }
    if (!hi.feasible) return infeasible(std::move(result), "infeasible problem at budget: upper bound of '" + v.name +
                                                               "' violates the reliability constraint");

    const double x = minimize_scalar_monotone([&](double t) { return eval(t).pof_upper; }, problem.p_adm, v.lower,
                                              v.upper, cfg.bisection_tolerance);
    result.status = SolveStatus::optimal;
    result.best = eval(x);
    result.message = "bisection converged";
    return result;
}

SolveResult solve_search(const DesignProblem& problem, const SolveConfig& cfg) {
    EvaluationCache cache(problem, cfg);
    struct Entry {
        EvalContext ctx;
        DesignEvaluation ev;
    };
    std::mutex mutex;
    std::vector<Entry> entries;

    const ContextObjective objective = [&](std::span<const double> unit, const EvalContext& ctx) {
        const auto theta = decode_design(problem, unit);
        DesignEvaluation ev = cache.get(theta);
        double f = signed_cost(problem, ev.cost_value);
        if (!ev.feasible) f += cfg.penalty_weight * (1.0 + (ev.pof_upper - problem.p_adm) / problem.p_adm);
        std::lock_guard lock(mutex);
        entries.push_back({ctx, std::move(ev)});
        return f;
    };

    OptimizerConfig outer = cfg.outer;
    outer.bounds.assign(problem.design_size(), {0.0, 1.0});
    const OptimizationResult opt = minimize(objective, outer);

    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::pair(a.ctx.generation, a.ctx.member) < std::pair(b.ctx.generation, b.ctx.member);
    });
    SolveResult result;
    result.trace = opt.trace;
    for (auto& e : entries) {
        if (e.ev.feasible && (!result.best || signed_cost(problem, e.ev.cost_value) <
                                                  signed_cost(problem, result.best->cost_value)))
            result.best = e.ev;
        result.history.push_back(std::move(e.ev));
    }
    if (!result.best) return infeasible(std::move(result), "infeasible problem at budget: no feasible candidate");
    result.status = SolveStatus::optimal;
    result.message = "search budget exhausted";
    return result;
}

}  // namespace

SolveResult solve(const DesignProblem& problem, const SolveConfig& cfg) {
    if (const auto issues = validate(problem); !issues.empty()) {
        std::string msg = "design problem is invalid:";
        for (const auto& i : issues) msg += " [" + i + "]";
        throw Error(msg);
    }
    if (cfg.outer.strategy == Strategy::bisection) {
        if (problem.variables.size() != 1 || problem.variables[0].kind != VariableKind::continuous ||
            problem.direction != Direction::minimize)
            throw Error("bisection needs a single continuous variable and minimization");
        return solve_bisection(problem, cfg);
    }
    return solve_search(problem, cfg);
}

}  // namespace ouq
