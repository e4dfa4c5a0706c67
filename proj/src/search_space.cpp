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

#include "tthpo/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

double raw_value(const AxisSpec &axis, std::size_t index) {
    // Last point pinned to `upper` so endpoint inclusion is exact.
    if (index + 1 == axis.points) {
        return axis.upper;
    }
    const double step = (axis.upper - axis.lower) / static_cast<double>(axis.points - 1);
    return axis.lower + static_cast<double>(index) * step;
}

bool is_whole(double v) { return std::isfinite(v) && std::floor(v) == v; }

} // namespace

void validate(const AxisSpec &axis) {
    if (!std::isfinite(axis.lower) || !std::isfinite(axis.upper) ||
        !(axis.lower < axis.upper)) {
        fail(ErrorKind::SpecInvalid, "axis '" + axis.name + "': lower must be < upper");
    }
    if (axis.points < 2) {
        fail(ErrorKind::SpecInvalid, "axis '" + axis.name + "': points must be >= 2");
    }
    if (axis.kind == AxisKind::Integer && (!is_whole(axis.lower) || !is_whole(axis.upper))) {
        fail(ErrorKind::SpecInvalid,
             "axis '" + axis.name + "': integer axis bounds must be whole numbers");
    }
}

std::vector<double> discretize(const AxisSpec &axis) {
    validate(axis);
    std::vector<double> out(axis.points);
    for (std::size_t j = 0; j < axis.points; ++j) {
        out[j] = raw_value(axis, j);
        if (axis.kind == AxisKind::Integer) {
            out[j] = std::round(out[j]);
            if (j > 0 && out[j] == out[j - 1]) {
                fail(ErrorKind::DuplicateGridValue,
                     "axis '" + axis.name + "': integer rounding repeats value " +
                         std::to_string(static_cast<long long>(out[j])));
            }
        }
    }
    return out;
}

double value_at(const AxisSpec &axis, std::size_t index) {
    if (index >= axis.points) {
        fail(ErrorKind::IndexOutOfRange, "axis '" + axis.name + "': index " +
                                             std::to_string(index) + " >= " +
                                             std::to_string(axis.points));
    }
    if (axis.kind == AxisKind::Integer) {
        // Duplicate detection needs the whole ladder.
        return discretize(axis)[index];
    }
    validate(axis);
    return raw_value(axis, index);
}

SearchSpace::SearchSpace(std::vector<AxisSpec> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) {
        fail(ErrorKind::SpecInvalid, "search space needs at least one axis");
    }
    std::set<std::string> names;
    grids_.reserve(axes_.size());
    for (const auto &a : axes_) {
        if (!names.insert(a.name).second) {
            fail(ErrorKind::SpecInvalid, "duplicate axis name '" + a.name + "'");
        }
        grids_.push_back(discretize(a));
    }
}

std::size_t SearchSpace::min_points() const noexcept {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto &a : axes_) {
        m = std::min(m, a.points);
    }
    return m;
}

std::size_t SearchSpace::cardinality() const noexcept {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    for (const auto &a : axes_) {
        if (total > kMax / a.points) {
            return kMax;
        }
        total *= a.points;
    }
    return total;
}

GridPoint SearchSpace::resolve(const GridIndex &indices) const {
    if (indices.size() != axes_.size()) {
        fail(ErrorKind::ShapeMismatch, "grid index has " + std::to_string(indices.size()) +
                                           " entries, space has " +
                                           std::to_string(axes_.size()) + " axes");
    }
    GridPoint p{indices, std::vector<double>(indices.size())};
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= axes_[i].points) {
            fail(ErrorKind::IndexOutOfRange,
                 "axis '" + axes_[i].name + "': index " + std::to_string(indices[i]));
        }
        p.values[i] = grids_[i][indices[i]];
    }
    return p;
}

SearchSpace SearchSpace::reversed() const {
    return SearchSpace(std::vector<AxisSpec>(axes_.rbegin(), axes_.rend()));
}

SearchSpace SearchSpace::uniform(std::size_t d, double lower, double upper,
                                 std::size_t points, AxisKind kind) {
    std::vector<AxisSpec> axes;
    axes.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        axes.push_back({"x" + std::to_string(i), lower, upper, points, kind});
    }
    return SearchSpace(std::move(axes));
}

} // namespace tthpo
