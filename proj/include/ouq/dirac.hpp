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

#include <span>
#include <vector>

#include "ouq/uncertainty_model.hpp"

namespace ouq {

/// Convex combination of Dirac masses: sum_k w_k * delta(y - y_k).
///
/// Weights are renormalized when their sum is within 1e-9 of one and
/// rejected otherwise. Coincident support points are allowed.
class DiracMeasure {
public:
    DiracMeasure(std::vector<double> points, std::vector<double> weights);

    static DiracMeasure point_mass(double y) { return DiracMeasure({y}, {1.0}); }

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

    friend bool operator==(const DiracMeasure&, const DiracMeasure&) = default;

private:
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// sum_k w_k y_k^order. Throws for order < 1.
[[nodiscard]] double classical_moment(const DiracMeasure& m, int order);

/// sum_k w_k (y_k - mean)^order. Throws for order < 1.
[[nodiscard]] double central_moment(const DiracMeasure& m, int order);

[[nodiscard]] double moment(const DiracMeasure& m, const MomentConstraint& c);

/// True iff every point lies in q.range and every moment constraint holds
/// with its interval inflated by tol * max(1, |lower|, |upper|) on each side.
[[nodiscard]] bool satisfies(const DiracMeasure& m, const UncertainQuantity& q, double tol);

}  // namespace ouq
