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
 * Objective plumbing shared by the optimizers: the memoizing evaluator and
 * the per-trial report.
 */

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "tthpo/search_space.hpp"

namespace tthpo {

/// Black-box score to be maximized. Must return a finite value.
using Objective = std::function<double(const GridPoint &)>;

struct HistoryEntry {
    std::size_t eval_index = 0;
    double score = 0.0;
    GridPoint point;
};

struct TrialReport {
    GridPoint best_point;
    double best_score = -std::numeric_limits<double>::infinity();
    std::size_t distinct_evals = 0;
    std::size_t total_requests = 0;
    bool budget_exhausted = false;
    std::vector<HistoryEntry> history;
};

/**
 * @brief Memoizing front-end to an objective.
 *
 * Every request is counted; only cache misses reach the objective and count
 * as distinct evaluations. The best record is updated on strict improvement,
 * so among equal scores the first one evaluated wins.
 */
class Evaluator {
  public:
    Evaluator(const SearchSpace &space, Objective objective,
              std::optional<std::size_t> budget = std::nullopt,
              bool record_history = true);

    /// Score at `indices` (original axis order), or nullopt once the budget
    /// is spent and the point is not cached. Throws ObjectiveFailure on a
    /// non-finite objective value.
    std::optional<double> request(const GridIndex &indices);

    [[nodiscard]] std::size_t distinct_evals() const noexcept { return report_.distinct_evals; }
    [[nodiscard]] std::size_t total_requests() const noexcept { return report_.total_requests; }
    [[nodiscard]] bool budget_exhausted() const noexcept;
    [[nodiscard]] double best_score() const noexcept { return report_.best_score; }
    [[nodiscard]] const TrialReport &report() const noexcept { return report_; }
    [[nodiscard]] TrialReport take_report() { return std::move(report_); }

  private:
    const SearchSpace &space_;
    Objective objective_;
    std::optional<std::size_t> budget_;
    bool record_history_;
    std::map<GridIndex, double> cache_;
    TrialReport report_;
};

/// Calls `objective` and raises ObjectiveFailure if the value is not finite.
double checked_call(const Objective &objective, const GridPoint &point);

} // namespace tthpo
