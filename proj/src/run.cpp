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

#include "ouq/run.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ouq/error.hpp"
#include "ouq/parallel.hpp"

namespace ouq {

using Json = nlohmann::ordered_json;

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::bounds: return "bounds";
        case RunMode::rbdo: return "rbdo";
        case RunMode::check: return "check";
        case RunMode::list: return "list";
        case RunMode::export_scenario: return "export";
    }
    return "unknown";
}

RunMode run_mode_from_string(std::string_view name) {
    for (RunMode m : {RunMode::bounds, RunMode::rbdo, RunMode::check, RunMode::list, RunMode::export_scenario})
        if (to_string(m) == name) return m;
    throw Error("unknown mode '" + std::string(name) + "'");
}

RunSettings effective_settings(const Scenario& scenario, const RunManifest& m) {
    RunSettings s = scenario.settings;
    if (m.seed) s.seed = *m.seed;
    if (m.samples) s.estimator.n_samples = *m.samples;
    if (m.lines) s.estimator.n_lines = *m.lines;
    if (m.method) s.estimator.method = *m.method;
    if (m.population) s.inner.population = *m.population;
    if (m.iterations) s.inner.max_iterations = *m.iterations;
    if (m.outer_population) s.outer.population = *m.outer_population;
    if (m.outer_iterations) s.outer.max_iterations = *m.outer_iterations;
    s.inner.min_population = std::min(s.inner.min_population, s.inner.population);
    s.outer.min_population = std::min(s.outer.min_population, s.outer.population);
    return s;
}

namespace {

Json measure_json(const NamedMeasure& m) {
    return Json{{"quantity", m.quantity},
                {"points", std::vector<double>(m.measure.points().begin(), m.measure.points().end())},
                {"weights", std::vector<double>(m.measure.weights().begin(), m.measure.weights().end())}};
}

Json trace_json(const std::vector<GenerationRecord>& trace, double sign) {
    Json out = Json::array();
    for (std::size_t g = 0; g < trace.size(); ++g)
        out.push_back({{"generation", g + 1}, {"best", sign * trace[g].best_f}, {"population", trace[g].population}});
    return out;
}

Json bound_json(const BoundResult& b) {
    Json certificate = Json::array();
    for (const auto& m : b.certificate) certificate.push_back(measure_json(m));
    const double sign = b.which == BoundKind::upper ? -1.0 : 1.0;
    return Json{{"which", std::string(to_string(b.which))},
                {"value", b.value},
                {"estimator_error", b.estimator_error},
                {"evaluations", b.evaluations},
                {"certificate", certificate},
                {"trace", trace_json(b.trace, sign)}};
}

Json evaluation_json(const DesignEvaluation& e, bool detailed) {
    Json j{{"theta", e.theta},
           {"cost", e.cost_value},
           {"pof_upper", e.pof_upper},
           {"pof_error", e.pof_error},
           {"feasible", e.feasible}};
    if (detailed) {
        j["pof_bound"] = bound_json(e.pof_bound);
        if (e.cost_bound) j["cost_bound"] = bound_json(*e.cost_bound);
    }
    return j;
}

double spread(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text << '\n';
    if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace

Json run_document(const RunManifest& manifest, const Scenario& scenario, int& exit_code) {
    if (manifest.repetitions < 1) throw Error("repetitions must be >= 1");
    if (const auto issues = check_scenario(scenario); !issues.empty()) {
        std::string msg = "scenario '" + scenario.name + "' is invalid:";
        for (const auto& i : issues) msg += "\n  " + i;
        throw Error(msg);
    }
    const auto start = std::chrono::steady_clock::now();
    const RunSettings settings = effective_settings(scenario, manifest);
    exit_code = kExitSuccess;

    Json config{{"scenario", scenario.name},
                {"mode", std::string(to_string(manifest.mode))},
                {"seed", settings.seed},
                {"repetitions", manifest.repetitions}};
    if (!manifest.theta.empty()) config["theta"] = manifest.theta;
    config["settings"] = render(settings);
    config["problem"] = scenario.is_design() ? render(std::get<DesignProblem>(scenario.problem))
                                             : render(std::get<UQProblem>(scenario.problem));

    Json results = Json::array();
    Json spread_doc = Json::object();

    if (manifest.mode == RunMode::bounds) {
        UQProblem problem;
        if (const auto* d = std::get_if<DesignProblem>(&scenario.problem)) {
            if (manifest.theta.size() != d->design_size())
                throw Error("bounds mode on a design scenario needs --theta with " +
                            std::to_string(d->design_size()) + " value(s)");
            problem = resolve_coupling(*d, manifest.theta);
        } else {
            if (!manifest.theta.empty()) throw Error("--theta only applies to design scenarios");
            problem = std::get<UQProblem>(scenario.problem);
        }
        std::vector<double> lowers, uppers;
        for (std::size_t r = 0; r < manifest.repetitions; ++r) {
            const std::uint64_t seed = settings.seed + r;
            const SolveConfig cfg = solve_config(settings, seed);
            const BoundResult lo = sharpest_bound(problem, BoundKind::lower, cfg.inner, cfg.estimator, cfg.bound);
            const BoundResult hi = sharpest_bound(problem, BoundKind::upper, cfg.inner, cfg.estimator, cfg.bound);
            lowers.push_back(lo.value);
            uppers.push_back(hi.value);
            results.push_back({{"repetition", r}, {"seed", seed}, {"lower", bound_json(lo)}, {"upper", bound_json(hi)}});
        }
        spread_doc = {{"lower", spread(lowers)}, {"upper", spread(uppers)}};
    } else if (manifest.mode == RunMode::rbdo) {
        const auto* d = std::get_if<DesignProblem>(&scenario.problem);
        if (d == nullptr) throw Error("rbdo mode needs a design scenario");
        std::vector<std::vector<double>> thetas;
        std::vector<double> costs;
        std::size_t infeasible = 0;
        for (std::size_t r = 0; r < manifest.repetitions; ++r) {
            const std::uint64_t seed = settings.seed + r;
            const SolveResult res = solve(*d, solve_config(settings, seed));
            Json history = Json::array();
            for (const auto& e : res.history) history.push_back(evaluation_json(e, false));
            Json entry{{"repetition", r},
                       {"seed", seed},
                       {"status", res.status == SolveStatus::optimal ? "optimal" : "infeasible"},
                       {"message", res.message}};
            if (res.best) {
                entry["best"] = evaluation_json(*res.best, true);
                thetas.push_back(res.best->theta);
                costs.push_back(res.best->cost_value);
            } else {
                entry["best"] = nullptr;
                ++infeasible;
            }
            entry["history"] = history;
            entry["trace"] = trace_json(res.trace, d->direction == Direction::minimize ? 1.0 : -1.0);
            results.push_back(entry);
        }
        Json theta_spread = Json::array();
        for (std::size_t i = 0; i < d->design_size(); ++i) {
            std::vector<double> column;
            for (const auto& t : thetas) column.push_back(t[i]);
            theta_spread.push_back(spread(column));
        }
        spread_doc = {{"theta", theta_spread}, {"cost", spread(costs)}, {"infeasible_repetitions", infeasible}};
        if (infeasible > 0) exit_code = kExitInfeasible;
    } else {
        throw Error("run_document handles only bounds and rbdo modes");
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json meta{{"tool", "rbdo-ouq"},
              {"format_version", 1},
              {"timestamp", {{"utc", utc_now()}, {"wall_clock_seconds", seconds}}}};
    return Json{{"meta", meta}, {"config", config}, {"results", results}, {"spread", spread_doc}};
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    try {
        if (manifest.threads > 0) set_thread_count(manifest.threads);
        switch (manifest.mode) {
            case RunMode::list:
                for (const auto& name : builtin_scenario_names()) out << name << '\n';
                return kExitSuccess;
            case RunMode::check: {
                const Scenario s = load_scenario(manifest.scenario);
                const auto issues = check_scenario(s);
                for (const auto& i : issues) err << s.name << ": " << i << '\n';
                if (!issues.empty()) return kExitError;
                out << s.name << ": ok\n";
                return kExitSuccess;
            }
            case RunMode::export_scenario: {
                const Scenario s = load_scenario(manifest.scenario);
                write_text(manifest.output, render(s).dump(2), out);
                return kExitSuccess;
            }
            case RunMode::bounds:
            case RunMode::rbdo: {
                const Scenario s = load_scenario(manifest.scenario);
                int code = kExitSuccess;
                const Json doc = run_document(manifest, s, code);
                write_text(manifest.output, doc.dump(2), out);
                if (code == kExitInfeasible) err << s.name << ": infeasible problem at budget\n";
                return code;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace ouq
