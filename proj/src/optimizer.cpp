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

#include "ouq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ouq/error.hpp"
#include "ouq/parallel.hpp"
#include "ouq/rng.hpp"

namespace ouq {

void OptimizerConfig::validate() const {
    if (population < 4) throw Error("population must be >= 4");
    if (min_population < 4 || min_population > population) throw Error("min_population must lie in [4, population]");
    for (const auto& [lo, hi] : bounds)
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw Error("bounds must be finite with low < high");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMemorySize = 5;
constexpr double kPbestFraction = 0.11;
constexpr double kStrategyFloorCount = 2.0;

double sanitize(double f) { return std::isfinite(f) ? f : kInf; }

enum Variant : std::size_t { rand1_bin = 0, best1_bin = 1, pbest1_bin = 2, rand1_exp = 3 };

struct Memory {
    std::array<double, kMemorySize> f;
    std::array<double, kMemorySize> cr;
    std::size_t next = 0;

    Memory() {
        f.fill(0.5);
        cr.fill(0.5);
    }
};

struct Success {
    double f;
    double cr;
    double gain;
};

double reflect(double x, double lo, double hi) {
    if (x < lo) x = lo + (lo - x);
    if (x > hi) x = hi - (x - hi);
    return std::clamp(x, lo, hi);
}

void evaluate_all(const ContextObjective& objective, const std::vector<std::vector<double>>& xs,
                  std::vector<double>& fs, std::size_t generation) {
    fs.assign(xs.size(), kInf);
    parallel_for(xs.size(), [&](std::size_t i) {
        fs[i] = sanitize(objective(xs[i], EvalContext{generation, i}));
    });
}

// Distinct indices from [0, n) excluding everything in `avoid`.
std::size_t pick(Rng& rng, std::size_t n, std::initializer_list<std::size_t> avoid) {
    for (;;) {
        const std::size_t r = rng.index(n);
        if (std::find(avoid.begin(), avoid.end(), r) == avoid.end()) return r;
    }
}

OptimizationResult differential_evolution(const ContextObjective& objective, const OptimizerConfig& cfg) {
    const std::size_t dim = cfg.bounds.size();
    Rng rng(cfg.seed);

    std::vector<std::vector<double>> pop(cfg.population, std::vector<double>(dim));
    for (auto& x : pop)
        for (std::size_t j = 0; j < dim; ++j) x[j] = rng.uniform(cfg.bounds[j].first, cfg.bounds[j].second);
    std::vector<double> fit;
    evaluate_all(objective, pop, fit, 0);

    OptimizationResult result;
    result.evaluations = pop.size();
    auto best_it = std::min_element(fit.begin(), fit.end());
    result.best_x = pop[static_cast<std::size_t>(best_it - fit.begin())];
    result.best_f = *best_it;

    std::array<Memory, kDeStrategies> memory;
    std::array<double, kDeStrategies> wins{};
    std::vector<std::vector<double>> archive;

    auto probabilities = [&] {
        std::array<double, kDeStrategies> q{};
        double total = 0.0;
        for (std::size_t k = 0; k < kDeStrategies; ++k) total += wins[k] + kStrategyFloorCount;
        for (std::size_t k = 0; k < kDeStrategies; ++k) q[k] = (wins[k] + kStrategyFloorCount) / total;
        return q;
    };

    for (std::size_t gen = 1; gen <= cfg.max_iterations; ++gen) {
        const std::size_t np = pop.size();
        auto q = probabilities();
        if (*std::min_element(q.begin(), q.end()) < 1.0 / (5.0 * kDeStrategies)) {
            wins.fill(0.0);
            q = probabilities();
        }

        std::vector<std::size_t> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });
        const std::size_t best = order.front();
        const std::size_t n_pbest = std::max<std::size_t>(2, static_cast<std::size_t>(std::round(kPbestFraction * np)));

        std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
        std::vector<std::size_t> variant(np);
        std::vector<double> used_f(np), used_cr(np);

        for (std::size_t i = 0; i < np; ++i) {
            double roll = rng.uniform();
            std::size_t k = 0;
            while (k + 1 < kDeStrategies && roll >= q[k]) roll -= q[k++];
            variant[i] = k;

            const Memory& mem = memory[k];
            const std::size_t slot = rng.index(kMemorySize);
            const double cr = std::clamp(rng.normal(mem.cr[slot], 0.1), 0.0, 1.0);
            double f = 0.0;
            do {
                f = rng.cauchy(mem.f[slot], 0.1);
            } while (!(f > 0.0));
            f = std::min(f, 1.0);
            used_f[i] = f;
            used_cr[i] = cr;

            const auto& x = pop[i];
            std::vector<double> v(dim);
            switch (k) {
                case rand1_bin:
                case rand1_exp: {
                    const std::size_t r1 = pick(rng, np, {i});
                    const std::size_t r2 = pick(rng, np, {i, r1});
                    const std::size_t r3 = pick(rng, np, {i, r1, r2});
                    for (std::size_t j = 0; j < dim; ++j) v[j] = pop[r1][j] + f * (pop[r2][j] - pop[r3][j]);
                    break;
                }
                case best1_bin: {
                    const std::size_t r1 = pick(rng, np, {i, best});
                    const std::size_t r2 = pick(rng, np, {i, best, r1});
                    for (std::size_t j = 0; j < dim; ++j) v[j] = pop[best][j] + f * (pop[r1][j] - pop[r2][j]);
                    break;
                }
                case pbest1_bin: {
                    const std::size_t pb = order[rng.index(n_pbest)];
                    const std::size_t r1 = pick(rng, np, {i});
                    std::size_t r2 = 0;
                    do {
                        r2 = rng.index(np + archive.size());
                    } while (r2 == i || r2 == r1);
                    const auto& x2 = r2 < np ? pop[r2] : archive[r2 - np];
                    for (std::size_t j = 0; j < dim; ++j)
                        v[j] = x[j] + f * (pop[pb][j] - x[j]) + f * (pop[r1][j] - x2[j]);
                    break;
                }
                default: break;
            }

            auto& u = trials[i];
            u = x;
            if (k == rand1_exp) {
                std::size_t j = rng.index(dim);
                std::size_t length = 0;
                do {
                    u[j] = v[j];
                    j = (j + 1) % dim;
                    ++length;
                } while (length < dim && rng.uniform() < cr);
            } else {
                const std::size_t j_rand = rng.index(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    if (j == j_rand || rng.uniform() < cr) u[j] = v[j];
            }
            for (std::size_t j = 0; j < dim; ++j) u[j] = reflect(u[j], cfg.bounds[j].first, cfg.bounds[j].second);
        }

        std::vector<double> trial_fit;
        evaluate_all(objective, trials, trial_fit, gen);
        result.evaluations += np;

        std::array<std::vector<Success>, kDeStrategies> successes;
        for (std::size_t i = 0; i < np; ++i) {
            if (!(trial_fit[i] <= fit[i])) continue;
            if (trial_fit[i] < fit[i]) {
                const double gain = fit[i] - trial_fit[i];
                successes[variant[i]].push_back({used_f[i], used_cr[i], std::isfinite(gain) ? gain : 1.0});
                wins[variant[i]] += 1.0;
                archive.push_back(pop[i]);
            }
            pop[i] = std::move(trials[i]);
            fit[i] = trial_fit[i];
            if (fit[i] < result.best_f) {
                result.best_f = fit[i];
                result.best_x = pop[i];
            }
        }

        for (std::size_t k = 0; k < kDeStrategies; ++k) {
            const auto& s = successes[k];
            if (s.empty()) continue;
            double total_gain = 0.0;
            for (const auto& e : s) total_gain += e.gain;
            double num_f = 0.0, den_f = 0.0, mean_cr = 0.0;
            for (const auto& e : s) {
                const double w = total_gain > 0.0 && std::isfinite(total_gain) ? e.gain / total_gain
                                                                               : 1.0 / static_cast<double>(s.size());
                num_f += w * e.f * e.f;
                den_f += w * e.f;
                mean_cr += w * e.cr;
            }
            Memory& mem = memory[k];
            mem.f[mem.next] = std::clamp(num_f / den_f, std::numeric_limits<double>::min(), 1.0);
            mem.cr[mem.next] = std::clamp(mean_cr, 0.0, 1.0);
            mem.next = (mem.next + 1) % kMemorySize;
        }

        // Linear population reduction: drop the worst members.
        const double frac = static_cast<double>(gen) / static_cast<double>(cfg.max_iterations);
        const auto target = static_cast<std::size_t>(std::round(
            static_cast<double>(cfg.population) +
            (static_cast<double>(cfg.min_population) - static_cast<double>(cfg.population)) * frac));
        if (target < pop.size()) {
            std::vector<std::size_t> idx(pop.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });
            idx.resize(target);
            std::sort(idx.begin(), idx.end());
            std::vector<std::vector<double>> kept;
            std::vector<double> kept_fit;
            for (std::size_t i : idx) {
                kept.push_back(std::move(pop[i]));
                kept_fit.push_back(fit[i]);
            }
            pop = std::move(kept);
            fit = std::move(kept_fit);
        }
        while (archive.size() > pop.size()) archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(rng.index(archive.size())));

        GenerationRecord rec;
        rec.best_f = result.best_f;
        rec.population = pop.size();
        rec.f_memory_min = rec.cr_memory_min = kInf;
        rec.f_memory_max = rec.cr_memory_max = -kInf;
        for (const auto& mem : memory) {
            for (double v : mem.f) {
                rec.f_memory_min = std::min(rec.f_memory_min, v);
                rec.f_memory_max = std::max(rec.f_memory_max, v);
            }
            for (double v : mem.cr) {
                rec.cr_memory_min = std::min(rec.cr_memory_min, v);
                rec.cr_memory_max = std::max(rec.cr_memory_max, v);
            }
        }
        rec.strategy_probability = q;
        result.trace.push_back(rec);
    }
    return result;
}

// Projected steepest descent with central differences and backtracking.
OptimizationResult gradient_descent(const ContextObjective& objective, const OptimizerConfig& cfg) {
    const std::size_t dim = cfg.bounds.size();
    std::vector<double> x(dim), width(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        x[j] = 0.5 * (cfg.bounds[j].first + cfg.bounds[j].second);
        width[j] = cfg.bounds[j].second - cfg.bounds[j].first;
    }
    std::size_t evals = 0;
    auto eval = [&](std::span<const double> p) {
        return sanitize(objective(p, EvalContext{0, evals++}));
    };
    auto project = [&](std::vector<double>& p) {
        for (std::size_t j = 0; j < dim; ++j) p[j] = std::clamp(p[j], cfg.bounds[j].first, cfg.bounds[j].second);
    };

    OptimizationResult result;
    result.best_x = x;
    result.best_f = eval(x);
    double step = 0.25;
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        std::vector<double> grad(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            const double h = 1e-6 * width[j];
            auto up = result.best_x, down = result.best_x;
            up[j] = std::min(up[j] + h, cfg.bounds[j].second);
            down[j] = std::max(down[j] - h, cfg.bounds[j].first);
            grad[j] = (eval(up) - eval(down)) / (up[j] - down[j]);
        }
        bool improved = false;
        for (int attempt = 0; attempt < 40 && !improved; ++attempt) {
            std::vector<double> candidate = result.best_x;
            for (std::size_t j = 0; j < dim; ++j) candidate[j] -= step * width[j] * width[j] * grad[j];
            project(candidate);
            const double f = eval(candidate);
            if (f < result.best_f) {
                result.best_f = f;
                result.best_x = std::move(candidate);
                improved = true;
                step *= 2.0;
            } else {
                step *= 0.5;
            }
        }
        GenerationRecord rec;
        rec.best_f = result.best_f;
        rec.population = 1;
        result.trace.push_back(rec);
    }
    result.evaluations = evals;
    return result;
}

}  // namespace

OptimizationResult minimize(const ContextObjective& objective, const OptimizerConfig& cfg) {
    cfg.validate();
    if (cfg.bounds.empty()) {
        OptimizationResult r;
        r.best_f = sanitize(objective({}, EvalContext{}));
        r.evaluations = 1;
        return r;
    }
    switch (cfg.strategy) {
        case Strategy::self_adaptive_de: return differential_evolution(objective, cfg);
        case Strategy::gradient_descent: return gradient_descent(objective, cfg);
        case Strategy::bisection:
            throw Error("bisection needs a threshold target; use minimize_scalar_monotone");
    }
    throw Error("unknown optimizer strategy");
}

OptimizationResult minimize(const Objective& objective, const OptimizerConfig& cfg) {
    return minimize(ContextObjective([&objective](std::span<const double> x, const EvalContext&) { return objective(x); }),
                    cfg);
}

double minimize_scalar_monotone(const std::function<double(double)>& f, double target, double low, double high,
                                double tol) {
    if (!(low < high) || !(tol > 0.0)) throw Error("bisection needs low < high and tol > 0");
    if (!(f(low) > target) || !(f(high) <= target)) throw Error("bracket does not straddle target");
    while (high - low > tol) {
        const double mid = 0.5 * (low + high);
        if (f(mid) <= target)
            high = mid;
        else
            low = mid;
    }
    return high;
}

}  // namespace ouq
