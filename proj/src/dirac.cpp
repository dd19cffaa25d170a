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

#include "ouq/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ouq/error.hpp"

namespace ouq {

DiracMeasure::DiracMeasure(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty() || points_.size() != weights_.size())
        throw Error("dirac measure needs matching, non-empty points and weights");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k])) throw Error("dirac support point is not finite");
        double& w = weights_[k];
        if (w < 0.0 && w > -1e-12) w = 0.0;
        if (!(w >= 0.0 && w <= 1.0 + 1e-12)) throw Error("dirac weight outside [0,1]");
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw Error("dirac weights do not sum to one");
    if (total != 1.0)
        for (double& w : weights_) w = std::min(1.0, w / total);
}

namespace {

double weighted_power_sum(const DiracMeasure& m, int order, double shift) {
    if (order < 1) throw Error("order must be >= 1");
    double acc = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) acc += m.weights()[k] * std::pow(m.points()[k] - shift, order);
    return acc;
}

}  // namespace

double classical_moment(const DiracMeasure& m, int order) { return weighted_power_sum(m, order, 0.0); }

double central_moment(const DiracMeasure& m, int order) {
    if (order < 1) throw Error("order must be >= 1");
    return weighted_power_sum(m, order, classical_moment(m, 1));
}

double moment(const DiracMeasure& m, const MomentConstraint& c) {
    return c.kind == MomentKind::classical ? classical_moment(m, c.order) : central_moment(m, c.order);
}

bool satisfies(const DiracMeasure& m, const UncertainQuantity& q, double tol) {
    const double range_slack = tol * std::max({1.0, std::abs(q.range.lower), std::abs(q.range.upper)});
    for (double y : m.points())
        if (y < q.range.lower - range_slack || y > q.range.upper + range_slack) return false;
    for (const auto& c : q.moments) {
        const double slack = tol * std::max({1.0, std::abs(c.lower), std::abs(c.upper)});
        const double value = moment(m, c);
        if (value < c.lower - slack || value > c.upper + slack) return false;
    }
    return true;
}

}  // namespace ouq
