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

#include <iostream>

#include <CLI11.hpp>

#include "ouq/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Sharpest probability bounds under mixed aleatory/epistemic uncertainty, and design optimization "
                 "against them."};
    ouq::RunManifest m;
    std::string mode = "bounds";
    std::string method;
    std::uint64_t seed = 0, samples = 0, lines = 0;
    std::size_t pop = 0, iters = 0, outer_pop = 0, outer_iters = 0;

    app.add_option("--scenario", m.scenario, "Built-in scenario name or scenario file path");
    app.add_option("--mode", mode, "bounds | rbdo | check | list | export")
        ->check(CLI::IsMember({"bounds", "rbdo", "check", "list", "export"}));
    auto* o_seed = app.add_option("--seed", seed, "Master seed (repetition r uses seed + r)");
    app.add_option("--reps", m.repetitions, "Repetitions")->check(CLI::PositiveNumber);
    auto* o_samples = app.add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    auto* o_lines = app.add_option("--lines", lines, "Line-sampling lines")->check(CLI::PositiveNumber);
    auto* o_method = app.add_option("--estimator", method, "line_sampling | crude_mc")
                         ->check(CLI::IsMember({"line_sampling", "crude_mc"}));
    auto* o_pop = app.add_option("--pop", pop, "Inner optimizer population")->check(CLI::Range(4, 1 << 20));
    auto* o_iters = app.add_option("--iters", iters, "Inner optimizer generations");
    auto* o_outer_pop =
        app.add_option("--outer-pop", outer_pop, "Outer optimizer population")->check(CLI::Range(4, 1 << 20));
    auto* o_outer_iters = app.add_option("--outer-iters", outer_iters, "Outer optimizer generations");
    app.add_option("--theta", m.theta, "Design vector for bounds mode on a design scenario");
    app.add_option("--out", m.output, "Output path (default stdout)");
    app.add_option("--threads", m.threads, "Worker threads (0 = hardware concurrency)");

    CLI11_PARSE(app, argc, argv);

    m.mode = ouq::run_mode_from_string(mode);
    if (m.mode != ouq::RunMode::list && m.scenario.empty()) {
        std::cerr << "error: --scenario is required for mode " << mode << '\n';
        return ouq::kExitError;
    }
    if (*o_seed) m.seed = seed;
    if (*o_samples) m.samples = samples;
    if (*o_lines) m.lines = lines;
    if (*o_method) m.method = method == "crude_mc" ? ouq::EstimatorMethod::crude_mc : ouq::EstimatorMethod::line_sampling;
    if (*o_pop) m.population = pop;
    if (*o_iters) m.iterations = iters;
    if (*o_outer_pop) m.outer_population = outer_pop;
    if (*o_outer_iters) m.outer_iterations = outer_iters;
    return ouq::run(m, std::cout, std::cerr);
}
