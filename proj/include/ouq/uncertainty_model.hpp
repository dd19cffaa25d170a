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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ouq {

enum class MomentKind { classical, central };

/// Bounds on E[y^order] (classical) or E[(y - E[y])^order] (central).
/// A precisely known moment is the degenerate interval lower == upper.
struct MomentConstraint {
    int order = 1;
    MomentKind kind = MomentKind::classical;
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] bool precise() const noexcept { return lower == upper; }
    friend bool operator==(const MomentConstraint&, const MomentConstraint&) = default;
};

enum class Family { lognormal, gumbel, beta, normal, uniform };

/// A distribution parameter: either a fixed number or the name of an
/// epistemic quantity whose value is substituted at evaluation time.
struct ParameterSpec {
    std::string name;
    double value = 0.0;
    std::string reference;

    [[nodiscard]] bool is_reference() const noexcept { return !reference.empty(); }
    friend bool operator==(const ParameterSpec&, const ParameterSpec&) = default;
};

/// Parameter names per family, in canonical order:
///   lognormal {mean, sd}      (mean and sd of the physical quantity)
///   gumbel    {location, scale}
///   normal    {mean, sd}
///   uniform   {lower, upper}
///   beta      {alpha, beta, lower, upper}
struct DistributionSpec {
    Family family = Family::normal;
    std::vector<ParameterSpec> parameters;

    [[nodiscard]] const ParameterSpec* find(std::string_view name) const;
    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

[[nodiscard]] const std::vector<std::string>& parameter_names(Family family);
[[nodiscard]] std::string_view to_string(Family family);
[[nodiscard]] Family family_from_string(std::string_view name);

enum class Classification { epistemic, aleatory };

struct Range {
    double lower = 0.0;
    double upper = 1.0;

    [[nodiscard]] double width() const noexcept { return upper - lower; }
    [[nodiscard]] bool contains(double x) const noexcept { return x >= lower && x <= upper; }
    friend bool operator==(const Range&, const Range&) = default;
};

struct UncertainQuantity {
    std::string name;
    Range range;
    Classification classification = Classification::epistemic;
    std::vector<MomentConstraint> moments;
    std::optional<DistributionSpec> distribution;
    std::string unit;

    [[nodiscard]] bool epistemic() const noexcept { return classification == Classification::epistemic; }
    friend bool operator==(const UncertainQuantity&, const UncertainQuantity&) = default;
};

/// Name of a registered response plus the fixed parameters it is built with.
struct ResponseSpec {
    std::string name;
    std::map<std::string, double> params;

    friend bool operator==(const ResponseSpec&, const ResponseSpec&) = default;
};

enum class Event { failure, expectation };

/// The admissible set in data form: the quantities, the response evaluated on
/// the full input vector (ordered as `quantities`) and the event of interest.
struct UQProblem {
    std::vector<UncertainQuantity> quantities;
    ResponseSpec response;
    Event event = Event::failure;

    [[nodiscard]] const UncertainQuantity* find(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] std::vector<std::size_t> epistemic_indices() const;
    [[nodiscard]] std::vector<std::size_t> aleatory_indices() const;
    friend bool operator==(const UQProblem&, const UQProblem&) = default;
};

struct Diagnostic {
    std::string quantity;
    std::string rule;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Checks every data-model invariant. Empty result means the problem is usable.
[[nodiscard]] std::vector<Diagnostic> validate(const UQProblem& problem);

/// Support points needed for the reduced measure of an epistemic quantity:
/// one for the range plus one per moment constraint.
[[nodiscard]] int dirac_term_count(const UncertainQuantity& q);

}  // namespace ouq
