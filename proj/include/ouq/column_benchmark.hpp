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

#include <numbers>
#include <string>
#include <vector>

#include "ouq/rbdo.hpp"
#include "ouq/response.hpp"

namespace ouq::column {

// Units throughout: N, mm, MPa.

/// Effective-length factor of the pinned-pinned Euler case: P_b = factor * E I / L^2.
inline constexpr double kEulerFactor = std::numbers::pi * std::numbers::pi;

struct SectionGeometry {
    double b = 300.0;   ///< flange width
    double h = 300.0;   ///< height, tied to b
    double t_b = 15.0;  ///< flange thickness
    double t_h = 10.0;  ///< web thickness
    double L = 7500.0;  ///< column length

    [[nodiscard]] static SectionGeometry square(double width) {
        SectionGeometry g;
        g.b = g.h = width;
        return g;
    }
};

struct SectionProperties {
    double A = 0.0;
    double W = 0.0;
    double I = 0.0;
};

struct ColumnState {
    double P_p = 0.0;      ///< permanent load
    double P_e = 0.0;      ///< environmental load
    double delta_0 = 0.0;  ///< initial deflection
    double y0 = 0.0;       ///< yield strength
    double E = 0.0;        ///< Young's modulus
};

/// Returned by the limit state once the total load reaches the buckling load.
inline constexpr double kBuckledLimitState = -1e30;

[[nodiscard]] SectionProperties section_properties(const SectionGeometry& geom);
[[nodiscard]] double buckling_load(const SectionGeometry& geom, double E, double euler_factor = kEulerFactor);

/// Negative means failure. Total load at or beyond the buckling load yields
/// kBuckledLimitState instead of crossing the pole.
[[nodiscard]] double limit_state(const SectionGeometry& geom, const ColumnState& state,
                                 double euler_factor = kEulerFactor);

/// Registers "column_buckling" (quantities P_p, P_e, delta_0, y0, E; params b
/// and optionally t_b, t_h, L, euler_factor) and "column_area" (param b).
void register_responses(ResponseRegistry& registry);

enum class ScenarioKind { ouq_g, ouq_e_range_100_500, ouq_e_range_0_1000 };

inline constexpr double kAdmissiblePof = 1.3e-6;

[[nodiscard]] std::string to_string(ScenarioKind kind);
[[nodiscard]] std::vector<ScenarioKind> scenario_kinds();

/// The benchmark design problem: minimize the cross-section area over the
/// width b (h = b) subject to the upper failure probability bound.
[[nodiscard]] DesignProblem scenario(ScenarioKind kind);

}  // namespace ouq::column
