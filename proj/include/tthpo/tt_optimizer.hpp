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
 * Tensor-train cross-approximation search over a discretized grid.
 *
 * The optimizer treats the objective as a d-way tensor of scores and never
 * enumerates it. Each core step evaluates one block: every grid value of the
 * active axis, crossed with r fixed prefixes (left) and r fixed suffixes
 * (right). MaxVol picks r rows of that block, and those rows become the
 * prefixes for the next axis. After the last inner core the axis order is
 * reversed and the same procedure runs back; one right pass plus one left
 * pass is one sweep.
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "tthpo/maxvol.hpp"
#include "tthpo/search_space.hpp"
#include "tthpo/trial.hpp"

namespace tthpo {

/// Elementwise map applied to a score block before row selection.
enum class ScoreTransform {
    /// Raw scores.
    None,
    /// pi/2 + atan((score - best) / w), w = transform_width * block spread.
    /// Positive and largest at the best score, so MaxVol favors good rows.
    Arctan,
};

struct TtConfig {
    std::size_t rank = 2;
    std::size_t sweeps = 1;
    std::uint64_t seed = 0;
    std::optional<std::size_t> eval_budget;
    double maxvol_tol = 0.01;
    std::size_t maxvol_max_iters = 100;
    ScoreTransform transform = ScoreTransform::Arctan;
    /// Arctan width as a fraction of (best - worst) score in the block.
    double transform_width = 0.01;
    bool record_history = true;
};

void validate(const TtConfig &cfg);

enum class SweepDirection { Right, Left };

struct TtState {
    /// 0-based position of the active core in the current axis order.
    std::size_t core = 0;
    SweepDirection direction = SweepDirection::Right;
    std::size_t sweep_index = 0;
    std::size_t half_sweep_index = 0;
    /// axis_order[p] is the original axis at current position p.
    std::vector<std::size_t> axis_order;
    /// r index prefixes over positions [0, core).
    std::vector<GridIndex> left_sets;
    /// r index suffixes over positions (core, d).
    std::vector<GridIndex> right_sets;
    double best_score = -std::numeric_limits<double>::infinity();
    GridPoint best_point;
};

/// Fresh state: r distinct random suffixes over positions 1..d-1.
TtState initial_state(const SearchSpace &space, const TtConfig &cfg);

/// Grid index in original axis order for a tuple in the state's current order.
GridIndex to_original(const TtState &state, const GridIndex &current);

/**
 * @brief Evaluates the block of the active core.
 *
 * `space` is the space in the state's current axis order. Rows are
 * left-set-major: row k * n + i pairs left_sets[k] with value i of the active
 * axis (core 0 has one row per value). Columns follow right_sets. Rows are
 * filled in order; if the evaluation budget runs out, the block is cut at the
 * last complete row.
 */
ScoreMatrix evaluate_core_block(const TtState &state, const SearchSpace &space,
                                Evaluator &evaluator);

/// Reverses the axis order; the fixed prefixes become the new suffixes.
std::pair<TtState, SearchSpace> reverse_axes(const TtState &state, const SearchSpace &space);

/// Literal block-size sum: the most distinct evaluations a run can make.
std::size_t tt_eval_bound(const SearchSpace &space, const TtConfig &cfg);

TrialReport tt_optimize(const Objective &objective, const SearchSpace &space,
                        const TtConfig &cfg);

} // namespace tthpo
