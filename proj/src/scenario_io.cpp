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

#include "ouq/scenario_io.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <utility>

#include "ouq/error.hpp"
#include "ouq/rng.hpp"

namespace ouq {

using Json = nlohmann::ordered_json;

namespace {

template <class E>
using Names = std::initializer_list<std::pair<E, std::string_view>>;

const Names<MomentKind> kMomentKinds{{MomentKind::classical, "classical"}, {MomentKind::central, "central"}};
const Names<Classification> kClassifications{{Classification::epistemic, "epistemic"},
                                             {Classification::aleatory, "aleatory"}};
const Names<Event> kEvents{{Event::failure, "failure"}, {Event::expectation, "expectation"}};
const Names<VariableKind> kVariableKinds{{VariableKind::continuous, "continuous"},
                                        {VariableKind::integer_set, "integer_set"},
                                        {VariableKind::unique_integers, "unique_integers"}};
const Names<CouplingTarget> kCouplingTargets{{CouplingTarget::range, "range"}, {CouplingTarget::moment, "moment"}};
const Names<Direction> kDirections{{Direction::minimize, "minimize"}, {Direction::maximize, "maximize"}};
const Names<CostKind> kCostKinds{{CostKind::deterministic, "deterministic"}, {CostKind::expectation, "expectation"}};
const Names<BoundKind> kBoundKinds{{BoundKind::lower, "lower"}, {BoundKind::upper, "upper"}};
const Names<Strategy> kStrategies{{Strategy::self_adaptive_de, "self_adaptive_de"},
                                  {Strategy::gradient_descent, "gradient_descent"},
                                  {Strategy::bisection, "bisection"}};
const Names<EstimatorMethod> kMethods{{EstimatorMethod::crude_mc, "crude_mc"},
                                      {EstimatorMethod::line_sampling, "line_sampling"}};
const Names<LineBases> kLineBases{{LineBases::pseudo_random, "pseudo_random"},
                                  {LineBases::quasi_random, "quasi_random"},
                                  {LineBases::lattice, "lattice"}};
const Names<LineDirection> kLineDirections{{LineDirection::origin_gradient, "origin_gradient"},
                                           {LineDirection::design_point, "design_point"}};
const Names<Parameterization> kParameterizations{{Parameterization::mixed, "mixed"},
                                                 {Parameterization::all_canonical, "all_canonical"}};
const Names<SeedPolicy> kSeedPolicies{{SeedPolicy::common, "common"}, {SeedPolicy::per_evaluation, "per_evaluation"}};

template <class E>
std::string name_of(const Names<E>& names, E value) {
    for (const auto& [e, n] : names)
        if (e == value) return std::string(n);
    throw Error("unnamed enumerator");
}

// Thin cursor that reports the document path on every failure.
class Node {
public:
    Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[nodiscard]] bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

    [[nodiscard]] Node at(const std::string& key) const {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) throw Error(path_ + "." + key + ": missing");
        return {j_.at(key), path_ + "." + key};
    }

    [[nodiscard]] std::vector<Node> items() const {
        if (!j_.is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
        return out;
    }

    [[nodiscard]] double number() const {
        if (!j_.is_number()) fail("expected a number");
        return j_.get<double>();
    }

    [[nodiscard]] std::uint64_t unsigned_integer() const {
        if (!j_.is_number_unsigned()) fail("expected a non-negative integer");
        return j_.get<std::uint64_t>();
    }

    [[nodiscard]] int integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }

    [[nodiscard]] std::string text() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    template <class E>
    [[nodiscard]] E choice(const Names<E>& names) const {
        const std::string s = text();
        for (const auto& [e, n] : names)
            if (n == s) return e;
        std::string allowed;
        for (const auto& [e, n] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
        fail("unknown value '" + s + "' (expected one of " + allowed + ")");
    }

    [[nodiscard]] std::pair<double, double> interval() const {
        const auto xs = items();
        if (xs.size() != 2) fail("expected [lower, upper]");
        return {xs[0].number(), xs[1].number()};
    }

    [[noreturn]] void fail(const std::string& what) const { throw Error(path_ + ": " + what); }

    [[nodiscard]] const Json& raw() const { return j_; }

private:
    const Json& j_;
    std::string path_;
};

Json render_response(const ResponseSpec& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return Json{{"name", r.name}, {"params", params}};
}

ResponseSpec parse_response(const Node& n) {
    ResponseSpec r;
    r.name = n.at("name").text();
    if (n.has("params")) {
        const Node params = n.at("params");
        if (!params.raw().is_object()) params.fail("expected an object");
        for (const auto& [k, v] : params.raw().items()) r.params[k] = params.at(k).number();
    }
    return r;
}

Json render_quantity(const UncertainQuantity& q) {
    Json j{{"name", q.name}, {"unit", q.unit}, {"classification", name_of(kClassifications, q.classification)},
           {"range", {q.range.lower, q.range.upper}}};
    Json moments = Json::array();
    for (const auto& m : q.moments)
        moments.push_back(
            {{"order", m.order}, {"kind", name_of(kMomentKinds, m.kind)}, {"lower", m.lower}, {"upper", m.upper}});
    j["moments"] = moments;
    if (q.distribution) {
        Json params = Json::array();
        for (const auto& p : q.distribution->parameters) {
            if (p.is_reference())
                params.push_back({{"name", p.name}, {"ref", p.reference}});
            else
                params.push_back({{"name", p.name}, {"value", p.value}});
        }
        j["distribution"] = {{"family", std::string(to_string(q.distribution->family))}, {"parameters", params}};
    }
    return j;
}

UncertainQuantity parse_quantity(const Node& n) {
    UncertainQuantity q;
    q.name = n.at("name").text();
    if (n.has("unit")) q.unit = n.at("unit").text();
    q.classification = n.at("classification").choice(kClassifications);
    const auto [lo, hi] = n.at("range").interval();
    q.range = {lo, hi};
    if (n.has("moments")) {
        for (const Node& m : n.at("moments").items()) {
            MomentConstraint c;
            c.order = m.at("order").integer();
            c.kind = m.has("kind") ? m.at("kind").choice(kMomentKinds) : MomentKind::classical;
            if (m.has("value")) {
                c.lower = c.upper = m.at("value").number();
            } else {
                c.lower = m.at("lower").number();
                c.upper = m.at("upper").number();
            }
            q.moments.push_back(c);
        }
    }
    if (n.has("distribution")) {
        const Node d = n.at("distribution");
        DistributionSpec spec;
        try {
            spec.family = family_from_string(d.at("family").text());
        } catch (const Error& e) {
            d.at("family").fail(e.what());
        }
        for (const Node& p : d.at("parameters").items()) {
            ParameterSpec ps;
            ps.name = p.at("name").text();
            if (p.has("ref"))
                ps.reference = p.at("ref").text();
            else
                ps.value = p.at("value").number();
            spec.parameters.push_back(ps);
        }
        q.distribution = spec;
    }
    return q;
}

Json render_optimizer(const OptimizerConfig& c) {
    return Json{{"strategy", name_of(kStrategies, c.strategy)},
                {"population", c.population},
                {"iterations", c.max_iterations},
                {"min_population", c.min_population}};
}

void parse_optimizer(const Node& n, OptimizerConfig& c) {
    if (n.has("strategy")) c.strategy = n.at("strategy").choice(kStrategies);
    if (n.has("population")) c.population = n.at("population").unsigned_integer();
    if (n.has("iterations")) c.max_iterations = n.at("iterations").unsigned_integer();
    if (n.has("min_population")) c.min_population = n.at("min_population").unsigned_integer();
}

}  // namespace

SolveConfig solve_config(const RunSettings& s, std::uint64_t seed) {
    SolveConfig cfg;
    cfg.estimator = s.estimator;
    cfg.estimator.seed = derive_seed(seed, 1);
    cfg.inner = s.inner;
    cfg.inner.seed = derive_seed(seed, 2);
    cfg.outer = s.outer;
    cfg.outer.seed = derive_seed(seed, 3);
    cfg.bound = s.bound;
    cfg.bisection_tolerance = s.bisection_tolerance;
    cfg.penalty_weight = s.penalty_weight;
    return cfg;
}

Json render(const UQProblem& problem) {
    Json quantities = Json::array();
    for (const auto& q : problem.quantities) quantities.push_back(render_quantity(q));
    return Json{{"quantities", quantities},
                {"response", render_response(problem.response)},
                {"event", name_of(kEvents, problem.event)}};
}

UQProblem parse_uq_problem(const Json& doc) {
    const Node n(doc, "$");
    UQProblem p;
    for (const Node& q : n.at("quantities").items()) p.quantities.push_back(parse_quantity(q));
    p.response = parse_response(n.at("response"));
    p.event = n.has("event") ? n.at("event").choice(kEvents) : Event::failure;
    return p;
}

Json render(const DesignProblem& problem) {
    Json variables = Json::array();
    for (const auto& v : problem.variables) {
        Json j{{"name", v.name}, {"kind", name_of(kVariableKinds, v.kind)}};
        if (v.kind != VariableKind::integer_set) {
            j["lower"] = v.lower;
            j["upper"] = v.upper;
        } else {
            j["choices"] = v.choices;
        }
        if (v.kind == VariableKind::unique_integers) j["count"] = v.count;
        if (v.coupling) {
            const Coupling& c = *v.coupling;
            j["coupling"] = {{"quantity", c.quantity},
                             {"target", name_of(kCouplingTargets, c.target)},
                             {"order", c.order},
                             {"kind", name_of(kMomentKinds, c.kind)},
                             {"width", c.width}};
        }
        variables.push_back(j);
    }
    Json cost{{"kind", name_of(kCostKinds, problem.cost.kind)}, {"response", render_response(problem.cost.response)}};
    if (problem.cost.problem) cost["problem"] = render(*problem.cost.problem);
    if (problem.cost.sense) cost["sense"] = name_of(kBoundKinds, *problem.cost.sense);
    return Json{{"name", problem.name},
                {"variables", variables},
                {"cost", cost},
                {"reliability", render(problem.reliability)},
                {"p_adm", problem.p_adm},
                {"direction", name_of(kDirections, problem.direction)}};
}

DesignProblem parse_design_problem(const Json& doc) {
    const Node n(doc, "$");
    DesignProblem p;
    if (n.has("name")) p.name = n.at("name").text();
    for (const Node& vn : n.at("variables").items()) {
        DesignVariable v;
        v.name = vn.at("name").text();
        v.kind = vn.has("kind") ? vn.at("kind").choice(kVariableKinds) : VariableKind::continuous;
        if (v.kind == VariableKind::integer_set) {
            for (const Node& c : vn.at("choices").items()) v.choices.push_back(c.integer());
        } else {
            v.lower = vn.at("lower").number();
            v.upper = vn.at("upper").number();
        }
        if (v.kind == VariableKind::unique_integers) v.count = vn.at("count").unsigned_integer();
        if (vn.has("coupling")) {
            const Node cn = vn.at("coupling");
            Coupling c;
            c.quantity = cn.at("quantity").text();
            c.target = cn.at("target").choice(kCouplingTargets);
            if (cn.has("order")) c.order = cn.at("order").integer();
            if (cn.has("kind")) c.kind = cn.at("kind").choice(kMomentKinds);
            c.width = cn.at("width").number();
            v.coupling = c;
        }
        p.variables.push_back(v);
    }
    const Node cn = n.at("cost");
    p.cost.kind = cn.at("kind").choice(kCostKinds);
    if (cn.has("response")) p.cost.response = parse_response(cn.at("response"));
    if (cn.has("problem")) p.cost.problem = parse_uq_problem(cn.at("problem").raw());
    if (cn.has("sense")) p.cost.sense = cn.at("sense").choice(kBoundKinds);
    p.reliability = parse_uq_problem(n.at("reliability").raw());
    p.p_adm = n.at("p_adm").number();
    if (n.has("direction")) p.direction = n.at("direction").choice(kDirections);
    return p;
}

Json render(const RunSettings& s) {
    return Json{{"seed", s.seed},
                {"estimator",
                 {{"method", name_of(kMethods, s.estimator.method)},
                  {"samples", s.estimator.n_samples},
                  {"lines", s.estimator.n_lines},
                  {"root_tolerance", s.estimator.root_tolerance},
                  {"bases", name_of(kLineBases, s.estimator.bases)},
                  {"direction", name_of(kLineDirections, s.estimator.direction)}}},
                {"inner", render_optimizer(s.inner)},
                {"outer", render_optimizer(s.outer)},
                {"bisection_tolerance", s.bisection_tolerance},
                {"penalty_weight", s.penalty_weight},
                {"bound",
                 {{"parameterization", name_of(kParameterizations, s.bound.parameterization)},
                  {"seeding", name_of(kSeedPolicies, s.bound.seeding)},
                  {"enumeration_cap", s.bound.enumeration_cap}}}};
}

RunSettings parse_settings(const Json& doc) {
    const Node n(doc, "$.settings");
    RunSettings s;
    if (n.has("seed")) s.seed = n.at("seed").unsigned_integer();
    if (n.has("estimator")) {
        const Node e = n.at("estimator");
        if (e.has("method")) s.estimator.method = e.at("method").choice(kMethods);
        if (e.has("samples")) s.estimator.n_samples = e.at("samples").unsigned_integer();
        if (e.has("lines")) s.estimator.n_lines = e.at("lines").unsigned_integer();
        if (e.has("root_tolerance")) s.estimator.root_tolerance = e.at("root_tolerance").number();
        if (e.has("bases")) s.estimator.bases = e.at("bases").choice(kLineBases);
        if (e.has("direction")) s.estimator.direction = e.at("direction").choice(kLineDirections);
    }
    if (n.has("inner")) parse_optimizer(n.at("inner"), s.inner);
    if (n.has("outer")) parse_optimizer(n.at("outer"), s.outer);
    if (n.has("bisection_tolerance")) s.bisection_tolerance = n.at("bisection_tolerance").number();
    if (n.has("penalty_weight")) s.penalty_weight = n.at("penalty_weight").number();
    if (n.has("bound")) {
        const Node b = n.at("bound");
        if (b.has("parameterization")) s.bound.parameterization = b.at("parameterization").choice(kParameterizations);
        if (b.has("seeding")) s.bound.seeding = b.at("seeding").choice(kSeedPolicies);
        if (b.has("enumeration_cap")) s.bound.enumeration_cap = b.at("enumeration_cap").unsigned_integer();
    }
    return s;
}

Json render(const Scenario& scenario) {
    Json j{{"name", scenario.name}, {"description", scenario.description}};
    if (const auto* d = std::get_if<DesignProblem>(&scenario.problem)) {
        j["type"] = "design";
        j["design"] = render(*d);
    } else {
        j["type"] = "uq";
        j["uq"] = render(std::get<UQProblem>(scenario.problem));
    }
    j["settings"] = render(scenario.settings);
    return j;
}

Scenario parse_scenario(const Json& doc) {
    const Node n(doc, "$");
    Scenario s;
    s.name = n.at("name").text();
    if (n.has("description")) s.description = n.at("description").text();
    const std::string type = n.at("type").text();
    if (type == "design")
        s.problem = parse_design_problem(n.at("design").raw());
    else if (type == "uq")
        s.problem = parse_uq_problem(n.at("uq").raw());
    else
        n.at("type").fail("expected 'uq' or 'design'");
    if (n.has("settings")) s.settings = parse_settings(n.at("settings").raw());
    return s;
}

Scenario read_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(doc);
}

void write_scenario_file(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write scenario file '" + path + "'");
    out << render(scenario).dump(2) << '\n';
}

Scenario load_scenario(const std::string& name_or_path) {
    const auto names = builtin_scenario_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_scenario(name_or_path);
    if (std::filesystem::exists(name_or_path)) return read_scenario_file(name_or_path);
    throw Error("no built-in scenario or file named '" + name_or_path + "'");
}

std::vector<std::string> check_scenario(const Scenario& scenario) {
    std::vector<std::string> out;
    if (const auto* d = std::get_if<DesignProblem>(&scenario.problem)) {
        out = validate(*d);
    } else {
        for (const auto& diag : validate(std::get<UQProblem>(scenario.problem)))
            out.push_back(diag.quantity + ": " + diag.rule);
    }
    try {
        scenario.settings.estimator.validate();
        scenario.settings.inner.validate();
        if (scenario.settings.outer.strategy != Strategy::bisection) scenario.settings.outer.validate();
        if (!(scenario.settings.bisection_tolerance > 0.0)) throw Error("bisection_tolerance must be positive");
    } catch (const Error& e) {
        out.push_back(std::string("settings: ") + e.what());
    }
    return out;
}

}  // namespace ouq
