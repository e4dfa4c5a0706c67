// Copyright 2026 The tthpo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file
 * Discretized hyperparameter domain: axes, grid values and grid points.
 */

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tthpo {

enum class AxisKind { Continuous, Integer };

struct AxisSpec {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
    std::size_t points = 2;
    AxisKind kind = AxisKind::Continuous;
};

/// Throws SpecInvalid if the axis violates its invariants.
void validate(const AxisSpec &axis);

/**
 * @brief Endpoint-inclusive uniform grid of `axis.points` values.
 *
 * Integer axes round each value to the nearest whole number and reject
 * grids where two points round to the same value (DuplicateGridValue).
 */
std::vector<double> discretize(const AxisSpec &axis);

/// Same value as `discretize(axis)[index]`, without materializing the grid.
double value_at(const AxisSpec &axis, std::size_t index);

using GridIndex = std::vector<std::size_t>;

struct GridPoint {
    GridIndex indices;
    std::vector<double> values;

    bool operator==(const GridPoint &) const = default;
};

class SearchSpace {
  public:
    SearchSpace() = default;
    explicit SearchSpace(std::vector<AxisSpec> axes);

    [[nodiscard]] std::size_t dim() const noexcept { return axes_.size(); }
    [[nodiscard]] const AxisSpec &axis(std::size_t i) const { return axes_.at(i); }
    [[nodiscard]] std::span<const AxisSpec> axes() const noexcept { return axes_; }
    [[nodiscard]] std::size_t points(std::size_t i) const { return axes_.at(i).points; }
    [[nodiscard]] std::size_t min_points() const noexcept;

    /// Number of grid points, saturating at SIZE_MAX.
    [[nodiscard]] std::size_t cardinality() const noexcept;

    /// Grid values of axis i (cached at construction).
    [[nodiscard]] std::span<const double> grid(std::size_t i) const { return grids_.at(i); }

    [[nodiscard]] GridPoint resolve(const GridIndex &indices) const;

    /// Copy of this space with the axis order reversed.
    [[nodiscard]] SearchSpace reversed() const;

    /// d axes sharing the same bounds and point count, named x0..x{d-1}.
    static SearchSpace uniform(std::size_t d, double lower, double upper,
                               std::size_t points,
                               AxisKind kind = AxisKind::Continuous);

  private:
    std::vector<AxisSpec> axes_;
    std::vector<std::vector<double>> grids_;
};

} // namespace tthpo
