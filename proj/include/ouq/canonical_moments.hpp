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

#include <optional>
#include <span>
#include <vector>

#include "ouq/dirac.hpp"
#include "ouq/uncertainty_model.hpp"

namespace ouq {

/// Canonical coordinates are clamped to [kCanonicalClamp, 1 - kCanonicalClamp]
/// before a measure is recovered from them.
inline constexpr double kCanonicalClamp = 1e-9;

/// Raw moments E[y^1..y^n] on `interval` -> canonical moments p_1..p_n.
/// Throws DegenerateMomentSequence (carrying the first failing order) when the
/// sequence is not strictly inside the moment space.
[[nodiscard]] std::vector<double> moments_to_canonical(Range interval, std::span<const double> moments);

/// Canonical moments p_1..p_n in [0,1] -> raw moments E[y^1..y^n] on `interval`.
[[nodiscard]] std::vector<double> canonical_to_moments(Range interval, std::span<const double> canonical);

/// Lower principal representation: the n-point measure inside `interval`
/// whose first 2n-1 moments are those implied by canonical[0 .. 2n-2].
/// Coordinates are clamped first, so boundary vectors never fail.
[[nodiscard]] DiracMeasure canonical_to_dirac(Range interval, std::span<const double> canonical, int n_points);

enum class Parameterization {
    /// Interval-constrained moment orders are searched directly in their
    /// (feasibility-trimmed) constraint box; remaining orders are canonical.
    mixed,
    /// Every order is a canonical coordinate; interval constraints are checked
    /// after decoding and violations make the candidate infeasible.
    all_canonical,
};

/// Decoded search coordinates for one epistemic quantity.
struct CanonicalVector {
    Range interval;
    /// Values (quantity units) of the interval-constrained moments, by order.
    std::vector<double> free_classical;
    /// Canonical coordinates of the unconstrained orders.
    std::vector<double> canonical_tail;
    /// Complete p_1 .. p_{2n-1} after clamping.
    std::vector<double> canonical;
};

/// Maps a point of the unit box onto an admissible reduced measure for one
/// epistemic quantity. Every box point decodes to a measure satisfying the
/// quantity's constraints, or to nothing when the lower-order choices leave
/// no room for a constrained moment.
class MeasureCoder {
public:
    MeasureCoder(const UncertainQuantity& quantity, Parameterization mode = Parameterization::mixed);

    /// Number of box coordinates consumed by decode.
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] int n_points() const noexcept { return n_points_; }

    [[nodiscard]] std::optional<CanonicalVector> decode_coordinates(std::span<const double> unit) const;
    [[nodiscard]] std::optional<DiracMeasure> decode(std::span<const double> unit) const;

private:
    UncertainQuantity quantity_;
    Parameterization mode_;
    int n_points_;
    std::size_t dimension_;
    std::vector<std::optional<MomentConstraint>> by_order_;  // index order-1
};

}  // namespace ouq
