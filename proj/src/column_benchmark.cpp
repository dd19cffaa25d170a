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

#include "ouq/column_benchmark.hpp"

#include "ouq/error.hpp"

namespace ouq::column {

SectionProperties section_properties(const SectionGeometry& g) {
    SectionProperties p;
    p.A = 2.0 * g.b * g.t_b + g.h * g.t_h;
    p.W = g.h * g.t_h * g.t_h * g.t_h / (6.0 * g.b) + g.b * g.b * g.t_b / 3.0;
    p.I = g.h * g.t_h * g.t_h * g.t_h / 12.0 + g.b * g.b * g.b * g.t_b / 6.0;
    return p;
}

double buckling_load(const SectionGeometry& geom, double E, double euler_factor) {
    return euler_factor * E * section_properties(geom).I / (geom.L * geom.L);
}

double limit_state(const SectionGeometry& geom, const ColumnState& s, double euler_factor) {
    const SectionProperties sp = section_properties(geom);
    const double load = s.P_p + s.P_e;
    const double pb = euler_factor * s.E * sp.I / (geom.L * geom.L);
    if (load >= pb) return kBuckledLimitState;
    const double amplification = pb / (pb - load);
    return 1.0 - (load / (s.y0 * sp.A) + load * s.delta_0 / (s.y0 * sp.W) * amplification);
}

namespace {

SectionGeometry geometry_from(const std::map<std::string, double>& params) {
    SectionGeometry g = SectionGeometry::square(require_param(params, "b"));
    g.t_b = param_or(params, "t_b", g.t_b);
    g.t_h = param_or(params, "t_h", g.t_h);
    g.L = param_or(params, "L", g.L);
    if (!(g.b > 0.0) || !(g.t_b > 0.0) || !(g.t_h > 0.0) || !(g.L > 0.0))
        throw Error("column geometry must be positive");
    return g;
}

}  // namespace

void register_responses(ResponseRegistry& registry) {
    registry.add("column_buckling", [](const std::vector<std::string>& names,
                                       const std::map<std::string, double>& params) -> ResponseFn {
        const SectionGeometry geom = geometry_from(params);
        const double factor = param_or(params, "euler_factor", kEulerFactor);
        const std::size_t ip = require_quantity(names, "P_p");
        const std::size_t ie = require_quantity(names, "P_e");
        const std::size_t id = require_quantity(names, "delta_0");
        const std::size_t iy = require_quantity(names, "y0");
        const std::size_t iE = require_quantity(names, "E");
        return [=](std::span<const double> z) {
            return limit_state(geom, ColumnState{z[ip], z[ie], z[id], z[iy], z[iE]}, factor);
        };
    });
    registry.add("column_area", [](const std::vector<std::string>&,
                                   const std::map<std::string, double>& params) -> ResponseFn {
        const double area = section_properties(geometry_from(params)).A;
        return [area](std::span<const double>) { return area; };
    });
}

}  // namespace ouq::column

namespace ouq::column {

namespace {

constexpr double kKilo = 1000.0;

UncertainQuantity interval(std::string name, double lo, double hi, std::string unit) {
    UncertainQuantity q;
    q.name = std::move(name);
    q.range = {lo, hi};
    q.unit = std::move(unit);
    return q;
}

UncertainQuantity lognormal(std::string name, double mean, double sd, Range range, std::string unit) {
    UncertainQuantity q;
    q.name = std::move(name);
    q.range = range;
    q.classification = Classification::aleatory;
    q.distribution = DistributionSpec{Family::lognormal, {{"mean", mean, ""}, {"sd", sd, ""}}};
    q.unit = std::move(unit);
    return q;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::ouq_g: return "ouq_g";
        case ScenarioKind::ouq_e_range_100_500: return "ouq_e_range_100_500";
        case ScenarioKind::ouq_e_range_0_1000: return "ouq_e_range_0_1000";
    }
    throw Error("unknown scenario kind");
}

std::vector<ScenarioKind> scenario_kinds() {
    return {ScenarioKind::ouq_g, ScenarioKind::ouq_e_range_100_500, ScenarioKind::ouq_e_range_0_1000};
}

DesignProblem scenario(ScenarioKind kind) {
    const SectionGeometry geom;
    const std::map<std::string, double> section{{"t_b", geom.t_b}, {"t_h", geom.t_h}};

    UQProblem rel;
    rel.response = {"column_buckling", section};
    rel.response.params["L"] = geom.L;
    rel.response.params["euler_factor"] = kEulerFactor;
    rel.event = Event::failure;

    rel.quantities.push_back(interval("P_p", 100.0 * kKilo, 200.0 * kKilo, "N"));
    UncertainQuantity pe;
    pe.name = "P_e";
    pe.unit = "N";
    if (kind == ScenarioKind::ouq_g) {
        // Gumbel with imprecise location and scale; the range only bounds
        // the support check of the data model, the tail is unbounded.
        pe.range = {-1e7, 1e7};
        pe.classification = Classification::aleatory;
        pe.distribution = DistributionSpec{Family::gumbel, {{"location", 0.0, "a_e"}, {"scale", 0.0, "b_e"}}};
    } else {
        pe.range = kind == ScenarioKind::ouq_e_range_100_500 ? Range{100.0 * kKilo, 500.0 * kKilo}
                                                              : Range{0.0, 1000.0 * kKilo};
        pe.moments = {
            {1, MomentKind::classical, 209.4 * kKilo, 279.0 * kKilo},
            {2, MomentKind::central, 2251.91 * kKilo * kKilo, 9007.66 * kKilo * kKilo},
            {3, MomentKind::central, 121775.0 * kKilo * kKilo * kKilo, 974204.0 * kKilo * kKilo * kKilo},
        };
    }
    rel.quantities.push_back(pe);
    rel.quantities.push_back(interval("delta_0", 0.0, 60.0, "mm"));
    rel.quantities.push_back(lognormal("y0", 400.0, 32.0, {0.0, 1e4}, "MPa"));
    rel.quantities.push_back(lognormal("E", 210000.0, 8400.0, {0.0, 1e7}, "MPa"));
    if (kind == ScenarioKind::ouq_g) {
        UncertainQuantity a = interval("a_e", 188.0 * kKilo, 236.0 * kKilo, "N");
        a.moments = {{1, MomentKind::classical, 201.4 * kKilo, 222.6 * kKilo}};
        UncertainQuantity b = interval("b_e", 37.0 * kKilo, 74.0 * kKilo, "N");
        b.moments = {{1, MomentKind::classical, 49.685 * kKilo, 54.915 * kKilo}};
        rel.quantities.push_back(a);
        rel.quantities.push_back(b);
    }

    DesignProblem p;
    p.name = to_string(kind);
    DesignVariable width;
    width.name = "b";
    width.lower = 250.0;
    width.upper = 400.0;
    p.variables = {width};
    p.cost.kind = CostKind::deterministic;
    p.cost.response = {"column_area", section};
    p.reliability = std::move(rel);
    p.p_adm = kAdmissiblePof;
    p.direction = Direction::minimize;
    return p;
}

}  // namespace ouq::column
