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

#include "ouq/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "ouq/error.hpp"

namespace ouq {

namespace bm = boost::math;

namespace {

constexpr double kMaxAbsU = 37.0;

double get(const std::map<std::string, double>& params, const char* name) {
    auto it = params.find(name);
    if (it == params.end()) throw Error(std::string("missing distribution parameter '") + name + "'");
    return it->second;
}

}  // namespace

double normal_cdf(double u) { return bm::cdf(bm::normal(), u); }

double normal_quantile(double p) { return bm::quantile(bm::normal(), p); }

Distribution::Distribution(Family family, const std::map<std::string, double>& params) : family_(family) {
    try {
        switch (family) {
            case Family::normal:
                impl_ = bm::normal(get(params, "mean"), get(params, "sd"));
                break;
            case Family::lognormal: {
                // Parameters are the mean and sd of the physical quantity.
                const double mean = get(params, "mean");
                const double sd = get(params, "sd");
                if (!(mean > 0.0) || !(sd > 0.0)) throw Error("lognormal mean and sd must be positive");
                const double s2 = std::log1p((sd / mean) * (sd / mean));
                impl_ = bm::lognormal(std::log(mean) - 0.5 * s2, std::sqrt(s2));
                break;
            }
            case Family::gumbel:
                impl_ = bm::extreme_value(get(params, "location"), get(params, "scale"));
                break;
            case Family::uniform:
                impl_ = bm::uniform(get(params, "lower"), get(params, "upper"));
                break;
            case Family::beta: {
                const Range r{get(params, "lower"), get(params, "upper")};
                if (!(r.lower < r.upper)) throw Error("beta support needs lower < upper");
                impl_ = Scaled{bm::beta_distribution<>(get(params, "alpha"), get(params, "beta")), r};
                break;
            }
        }
    } catch (const std::domain_error& e) {
        throw Error(std::string("invalid ") + std::string(to_string(family)) + " parameters: " + e.what());
    }
}

double Distribution::cdf(double x) const {
    return std::visit(
        [x](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>) {
                const double t = std::clamp((x - d.second.lower) / d.second.width(), 0.0, 1.0);
                return bm::cdf(d.first, t);
            } else {
                const auto [lo, hi] = bm::support(d);
                if (x <= lo) return 0.0;
                if (x >= hi) return 1.0;
                return bm::cdf(d, x);
            }
        },
        impl_);
}

double Distribution::ccdf(double x) const {
    return std::visit(
        [x](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>) {
                const double t = std::clamp((x - d.second.lower) / d.second.width(), 0.0, 1.0);
                return bm::cdf(bm::complement(d.first, t));
            } else {
                const auto [lo, hi] = bm::support(d);
                if (x <= lo) return 1.0;
                if (x >= hi) return 0.0;
                return bm::cdf(bm::complement(d, x));
            }
        },
        impl_);
}

double Distribution::pdf(double x) const {
    return std::visit(
        [x](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>) {
                const double t = (x - d.second.lower) / d.second.width();
                if (t < 0.0 || t > 1.0) return 0.0;
                return bm::pdf(d.first, t) / d.second.width();
            } else {
                const auto [lo, hi] = bm::support(d);
                if (x < lo || x > hi) return 0.0;
                return bm::pdf(d, x);
            }
        },
        impl_);
}

double Distribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw Error("quantile probability must lie in (0,1)");
    return std::visit(
        [p](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>)
                return d.second.lower + d.second.width() * bm::quantile(d.first, p);
            else
                return bm::quantile(d, p);
        },
        impl_);
}

double Distribution::upper_quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw Error("quantile probability must lie in (0,1)");
    return std::visit(
        [q](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>)
                return d.second.lower + d.second.width() * bm::quantile(bm::complement(d.first, q));
            else
                return bm::quantile(bm::complement(d, q));
        },
        impl_);
}

double Distribution::mean() const {
    return std::visit(
        [](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>)
                return d.second.lower + d.second.width() * bm::mean(d.first);
            else
                return bm::mean(d);
        },
        impl_);
}

double Distribution::sd() const {
    return std::visit(
        [](const auto& d) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>)
                return d.second.width() * bm::standard_deviation(d.first);
            else
                return bm::standard_deviation(d);
        },
        impl_);
}

Range Distribution::support() const {
    return std::visit(
        [](const auto& d) -> Range {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Scaled>) {
                return d.second;
            } else {
                const auto [lo, hi] = bm::support(d);
                return {lo, hi};
            }
        },
        impl_);
}

double Distribution::to_standard_normal(double x) const {
    const Range s = support();
    if (!std::isfinite(x) || !(x >= s.lower && x <= s.upper)) throw Error("value outside distribution support");
    const double p = cdf(x);
    if (p <= 0.5) return p > 0.0 ? normal_quantile(p) : -kMaxAbsU;
    const double q = ccdf(x);
    return q > 0.0 ? -normal_quantile(q) : kMaxAbsU;
}

double Distribution::from_standard_normal(double u) const {
    u = std::clamp(u, -kMaxAbsU, kMaxAbsU);
    if (u <= 0.0) return quantile(normal_cdf(u));
    return upper_quantile(normal_cdf(-u));
}

}  // namespace ouq
