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

#include "ouq/canonical_moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ouq/error.hpp"

namespace ouq {

namespace {

// Moments on [0,1] are carried through the continued-fraction parameters
//   zeta_1 = p_1,  zeta_j = (1 - p_{j-1}) p_j,
// which define the monic recurrence
//   x P_k = P_{k+1} + (zeta_{2k} + zeta_{2k+1}) P_k + zeta_{2k-1} zeta_{2k} P_{k-1}.
// The k-th moment is the (0,0) entry of the k-th power of the recurrence
// matrix, a sum of non-negative path weights, so it is evaluated without
// cancellation.
class MomentRecurrence {
public:
    explicit MomentRecurrence(std::size_t max_order) : zeta_(max_order + 2, 0.0) {}

    void set_zeta(std::size_t j, double z) { zeta_[j] = z; }
    [[nodiscard]] double zeta(std::size_t j) const { return zeta_[j]; }

    // Moment of order k using zeta_1..zeta_k only.
    [[nodiscard]] double moment(std::size_t k) const {
        const std::size_t depth = k / 2 + 1;
        std::vector<double> v(depth + 1, 0.0), next(depth + 1, 0.0);
        v[0] = 1.0;
        for (std::size_t step = 0; step < k; ++step) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t d = 0; d < depth; ++d) {
                if (v[d] == 0.0) continue;
                next[d] += alpha(d) * v[d];
                if (d + 1 < depth) next[d + 1] += v[d];
                if (d > 0) next[d - 1] += beta(d) * v[d];
            }
            std::swap(v, next);
        }
        return v[0];
    }

private:
    [[nodiscard]] double at(std::size_t j) const { return j < zeta_.size() ? zeta_[j] : 0.0; }
    [[nodiscard]] double alpha(std::size_t d) const { return at(2 * d) + at(2 * d + 1); }
    [[nodiscard]] double beta(std::size_t d) const { return at(2 * d - 1) * at(2 * d); }

    std::vector<double> zeta_;  // zeta_[0] == 0
};

// Bounds [c^-, c^+] of the order-j moment given zeta_1..zeta_{j-1}, i.e. the
// moment at p_j = 0 and p_j = 1. `q_prev` is 1 - p_{j-1} (1 for j == 1).
std::pair<double, double> moment_bounds(MomentRecurrence& rec, std::size_t j, double q_prev) {
    rec.set_zeta(j, 0.0);
    const double lo = rec.moment(j);
    rec.set_zeta(j, q_prev);
    const double hi = rec.moment(j);
    return {lo, hi};
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// E[y^k] for y = a + s x from E[x^0..x^k] (unit[0] == 1).
double to_interval_moment(const std::vector<double>& unit, int k, double a, double s) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += binomial(k, j) * std::pow(a, k - j) * std::pow(s, j) * unit[j];
    return acc;
}

// E[x^k] for x = (y - a) / s from E[y^0..y^k].
double to_unit_moment(const std::vector<double>& raw, int k, double a, double s) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += binomial(k, j) * std::pow(-a, k - j) * raw[j];
    return acc / std::pow(s, k);
}

double clamp_canonical(double p) { return std::clamp(p, kCanonicalClamp, 1.0 - kCanonicalClamp); }

void require_interval(Range interval) {
    if (!(interval.lower < interval.upper) || !std::isfinite(interval.lower) || !std::isfinite(interval.upper))
        throw Error("canonical moments need a bounded interval with lower < upper");
}

}  // namespace

std::vector<double> moments_to_canonical(Range interval, std::span<const double> moments) {
    require_interval(interval);
    const double a = interval.lower;
    const double s = interval.width();
    const std::size_t n = moments.size();

    std::vector<double> raw{1.0};
    raw.insert(raw.end(), moments.begin(), moments.end());

    MomentRecurrence rec(n);
    std::vector<double> p(n);
    double q_prev = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double c = to_unit_moment(raw, static_cast<int>(j), a, s);
        const auto [lo, hi] = moment_bounds(rec, j, q_prev);
        const double width = hi - lo;
        const double pj = width > 0.0 ? (c - lo) / width : std::nan("");
        constexpr double edge = 1e-13;
        if (!(pj > edge && pj < 1.0 - edge))
            throw DegenerateMomentSequence(static_cast<int>(j),
                                           "degenerate moment sequence at order " + std::to_string(j));
        p[j - 1] = pj;
        rec.set_zeta(j, q_prev * pj);
        q_prev = 1.0 - pj;
    }
    return p;
}

std::vector<double> canonical_to_moments(Range interval, std::span<const double> canonical) {
    require_interval(interval);
    const std::size_t n = canonical.size();
    MomentRecurrence rec(n);
    std::vector<double> unit{1.0};
    double q_prev = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double pj = canonical[j - 1];
        if (!(pj >= 0.0 && pj <= 1.0)) throw Error("canonical coordinate outside [0,1]");
        rec.set_zeta(j, q_prev * pj);
        q_prev = 1.0 - pj;
        unit.push_back(rec.moment(j));
    }
    std::vector<double> out(n);
    for (std::size_t k = 1; k <= n; ++k)
        out[k - 1] = to_interval_moment(unit, static_cast<int>(k), interval.lower, interval.width());
    return out;
}

DiracMeasure canonical_to_dirac(Range interval, std::span<const double> canonical, int n_points) {
    require_interval(interval);
    if (n_points < 1) throw Error("n_points must be >= 1");
    const auto needed = static_cast<std::size_t>(2 * n_points - 1);
    if (canonical.size() < needed) throw Error("canonical vector too short for requested support size");

    std::vector<double> zeta(needed + 1, 0.0);
    double q_prev = 1.0;
    for (std::size_t j = 1; j <= needed; ++j) {
        const double pj = clamp_canonical(canonical[j - 1]);
        zeta[j] = q_prev * pj;
        q_prev = 1.0 - pj;
    }

    const auto n = static_cast<Eigen::Index>(n_points);
    Eigen::VectorXd diag(n), sub(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index d = 0; d < n; ++d) {
        const auto k = static_cast<std::size_t>(d);
        diag(d) = (k == 0 ? 0.0 : zeta[2 * k]) + zeta[2 * k + 1];
        if (d > 0) sub(d - 1) = std::sqrt(zeta[2 * k - 1] * zeta[2 * k]);
    }

    std::vector<double> points(n_points), weights(n_points);
    if (n == 1) {
        points[0] = diag(0);
        weights[0] = 1.0;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success) throw Error("jacobi eigen decomposition failed");
        double total = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            points[k] = solver.eigenvalues()(k);
            const double v0 = solver.eigenvectors()(0, k);
            weights[k] = v0 * v0;
            total += weights[k];
        }
        for (double& w : weights) w /= total;
    }
    for (double& x : points) x = interval.lower + interval.width() * std::clamp(x, 0.0, 1.0);
    return DiracMeasure(std::move(points), std::move(weights));
}

MeasureCoder::MeasureCoder(const UncertainQuantity& quantity, Parameterization mode)
    : quantity_(quantity), mode_(mode), n_points_(dirac_term_count(quantity)), dimension_(0) {
    const auto m = static_cast<std::size_t>(2 * n_points_ - 1);
    by_order_.assign(m, std::nullopt);
    for (const auto& c : quantity_.moments) {
        if (c.order < 1 || static_cast<std::size_t>(c.order) > m)
            throw Error("moment order of '" + quantity_.name + "' exceeds the representable order");
        by_order_[c.order - 1] = c;
    }
    for (const auto& c : by_order_)
        if (!c || !c->precise()) ++dimension_;
}

std::optional<CanonicalVector> MeasureCoder::decode_coordinates(std::span<const double> unit) const {
    if (unit.size() != dimension_) throw Error("coordinate count does not match coder dimension");
    const double a = quantity_.range.lower;
    const double s = quantity_.range.width();
    const std::size_t m = by_order_.size();

    CanonicalVector out;
    out.interval = quantity_.range;
    out.canonical.resize(m);

    MomentRecurrence rec(m);
    std::vector<double> c{1.0};  // normalized moments found so far
    double q_prev = 1.0;
    std::size_t next = 0;
    for (std::size_t j = 1; j <= m; ++j) {
        const MomentConstraint* con = by_order_[j - 1] ? &*by_order_[j - 1] : nullptr;
        const bool pinned = con != nullptr && (con->precise() || mode_ == Parameterization::mixed);
        const auto [lo, hi] = moment_bounds(rec, j, q_prev);
        double pj = 0.0;
        double scale = 1.0;
        double rest = 0.0;

        if (pinned) {
            // The order-j moment (classical or central, quantity units) is
            // scale * c_j + rest, with rest fixed by the lower orders.
            const int order = static_cast<int>(j);
            scale = std::pow(s, order);
            if (con->kind == MomentKind::classical) {
                for (int k = 0; k < order; ++k)
                    rest += binomial(order, k) * std::pow(a, order - k) * std::pow(s, k) * c[k];
            } else {
                const double mean = c[1];
                for (int k = 0; k < order; ++k) rest += binomial(order, k) * c[k] * std::pow(-mean, order - k);
                rest *= scale;
            }
            const double want_lo = (con->lower - rest) / scale;
            const double want_hi = (con->upper - rest) / scale;
            double target;
            if (con->precise()) {
                const double slack = 1e-12 * std::max(1.0, std::abs(want_lo));
                if (want_lo < lo - slack || want_lo > hi + slack) return std::nullopt;
                target = want_lo;
            } else {
                const double box_lo = std::max(want_lo, lo);
                const double box_hi = std::min(want_hi, hi);
                if (box_lo > box_hi) return std::nullopt;
                target = box_lo + unit[next++] * (box_hi - box_lo);
            }
            pj = hi > lo ? (target - lo) / (hi - lo) : 0.5;
        } else {
            pj = unit[next++];
        }

        pj = clamp_canonical(pj);
        rec.set_zeta(j, q_prev * pj);
        q_prev = 1.0 - pj;
        c.push_back(rec.moment(j));
        out.canonical[j - 1] = pj;

        if (pinned) {
            if (!con->precise()) out.free_classical.push_back(scale * c.back() + rest);
        } else {
            out.canonical_tail.push_back(pj);
        }
    }
    return out;
}

std::optional<DiracMeasure> MeasureCoder::decode(std::span<const double> unit) const {
    const auto coords = decode_coordinates(unit);
    if (!coords) return std::nullopt;
    auto measure = canonical_to_dirac(quantity_.range, coords->canonical, n_points_);
    if (mode_ == Parameterization::all_canonical && !satisfies(measure, quantity_, 1e-9)) return std::nullopt;
    return measure;
}

}  // namespace ouq
