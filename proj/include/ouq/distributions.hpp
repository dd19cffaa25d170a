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

#include <map>
#include <string>
#include <variant>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/extreme_value.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/uniform.hpp>

#include "ouq/uncertainty_model.hpp"

namespace ouq {

/// Standard normal CDF and its accurate upper tail.
[[nodiscard]] double normal_cdf(double u);
[[nodiscard]] double normal_quantile(double p);

/// A fully parameterized univariate distribution with an isoprobabilistic
/// map to and from standard normal space. Tails are evaluated through the
/// complementary functions so the map stays accurate for |u| up to ~37.
class Distribution {
public:
    /// `params` keyed by the family's parameter names (see parameter_names).
    Distribution(Family family, const std::map<std::string, double>& params);

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double ccdf(double x) const;
    [[nodiscard]] double pdf(double x) const;
    [[nodiscard]] double quantile(double p) const;
    /// x such that ccdf(x) == q.
    [[nodiscard]] double upper_quantile(double q) const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double sd() const;
    [[nodiscard]] Range support() const;

    [[nodiscard]] double to_standard_normal(double x) const;
    [[nodiscard]] double from_standard_normal(double u) const;

private:
    using Scaled = std::pair<boost::math::beta_distribution<>, Range>;
    using Impl = std::variant<boost::math::normal, boost::math::lognormal, boost::math::extreme_value,
                              boost::math::uniform, Scaled>;

    Family family_;
    Impl impl_;
};

}  // namespace ouq
