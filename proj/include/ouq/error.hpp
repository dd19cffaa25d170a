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

#include <stdexcept>
#include <string>

namespace ouq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A moment sequence lies on or outside the boundary of the moment space.
class DegenerateMomentSequence : public Error {
public:
    DegenerateMomentSequence(int order, const std::string& what)
        : Error(what), order_(order) {}

    /// First order (1-based) at which the sequence leaves the interior.
    [[nodiscard]] int order() const noexcept { return order_; }

private:
    int order_;
};

}  // namespace ouq
