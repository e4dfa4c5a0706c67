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

#include "tthpo/tt_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

void sync_best(TtState &state, const Evaluator &evaluator) {
    state.best_score = evaluator.report().best_score;
    state.best_point = evaluator.report().best_point;
}

Eigen::MatrixXd transformed(const Eigen::MatrixXd &scores, const TtConfig &cfg,
                            double best) {
    if (cfg.transform == ScoreTransform::None) {
        return scores;
    }
    const double ref = std::max(best, scores.maxCoeff());
    const double spread = ref - scores.minCoeff();
    const double width = spread > 0.0 ? spread * cfg.transform_width : 1.0;
    return scores.unaryExpr([ref, width](double y) {
        return std::numbers::pi / 2.0 + std::atan((y - ref) / width);
    });
}

// Runs the cores of one half-sweep. Returns false if the budget cut a block
// below r complete rows.
bool half_sweep(TtState &state, const SearchSpace &space, Evaluator &evaluator,
                const TtConfig &cfg) {
    const std::size_t d = space.dim();
    const MaxvolOptions opts{cfg.maxvol_tol, cfg.maxvol_max_iters};
    for (state.core = 0; state.core + 1 < d; ++state.core) {
        ScoreMatrix block = evaluate_core_block(state, space, evaluator);
        sync_best(state, evaluator);
        if (block.rows() < cfg.rank) {
            return false;
        }
        const Eigen::MatrixXd scores = transformed(block.data, cfg, state.best_score);
        RowSelection sel;
        try {
            sel = maxvol(scores, opts);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::RankDeficient) {
                throw;
            }
            sel.picked = pivoted_rows(scores);
        }

        std::vector<GridIndex> next_left;
        next_left.reserve(sel.picked.size());
        for (auto row : sel.picked) {
            next_left.push_back(block.row_labels[row]);
        }
        state.left_sets = std::move(next_left);
        for (auto &suffix : state.right_sets) {
            suffix.erase(suffix.begin());
        }
    }
    return true;
}

} // namespace

void validate(const TtConfig &cfg) {
    if (cfg.rank < 1) {
        fail(ErrorKind::ConfigInvalid, "tt.rank must be >= 1");
    }
    if (cfg.sweeps < 1) {
        fail(ErrorKind::ConfigInvalid, "tt.sweeps must be >= 1");
    }
    if (cfg.eval_budget && *cfg.eval_budget < cfg.rank) {
        fail(ErrorKind::ConfigInvalid, "tt.eval_budget must be >= tt.rank");
    }
    if (!(cfg.transform_width > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "tt.transform_width must be > 0");
    }
    if (!(cfg.maxvol_tol >= 0.0)) {
        fail(ErrorKind::ConfigInvalid, "tt.maxvol_tol must be >= 0");
    }
}

TtState initial_state(const SearchSpace &space, const TtConfig &cfg) {
    const std::size_t d = space.dim();
    TtState state;
    state.axis_order.resize(d);
    for (std::size_t p = 0; p < d; ++p) {
        state.axis_order[p] = p;
    }
    if (d < 2) {
        return state;
    }

    std::mt19937_64 rng(cfg.seed);
    std::set<GridIndex> seen;
    while (state.right_sets.size() < cfg.rank) {
        GridIndex suffix(d - 1);
        for (std::size_t p = 1; p < d; ++p) {
            std::uniform_int_distribution<std::size_t> pick(0, space.points(p) - 1);
            suffix[p - 1] = pick(rng);
        }
        // Redraw collisions so the r suffixes are distinct tuples.
        if (seen.insert(suffix).second) {
            state.right_sets.push_back(std::move(suffix));
        }
    }
    return state;
}

GridIndex to_original(const TtState &state, const GridIndex &current) {
    GridIndex out(current.size());
    for (std::size_t p = 0; p < current.size(); ++p) {
        out[state.axis_order[p]] = current[p];
    }
    return out;
}

ScoreMatrix evaluate_core_block(const TtState &state, const SearchSpace &space,
                                Evaluator &evaluator) {
    const std::size_t n = space.points(state.core);
    const std::size_t r = state.right_sets.size();
    const std::size_t prefixes = state.core == 0 ? 1 : state.left_sets.size();
    if (state.core > 0 && prefixes == 0) {
        fail(ErrorKind::InvalidArgument, "inner core without left sets");
    }

    ScoreMatrix block;
    block.data.resize(static_cast<Eigen::Index>(prefixes * n), static_cast<Eigen::Index>(r));
    block.row_labels.reserve(prefixes * n);

    std::size_t complete = 0;
    GridIndex full(space.dim());
    for (std::size_t k = 0; k < prefixes; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            GridIndex label = state.core == 0 ? GridIndex{} : state.left_sets[k];
            label.push_back(i);
            std::copy(label.begin(), label.end(), full.begin());
            for (std::size_t j = 0; j < r; ++j) {
                std::copy(state.right_sets[j].begin(), state.right_sets[j].end(),
                          full.begin() + static_cast<std::ptrdiff_t>(label.size()));
                const auto score = evaluator.request(to_original(state, full));
                if (!score) {
                    block.data.conservativeResize(static_cast<Eigen::Index>(complete),
                                                  Eigen::NoChange);
                    return block;
                }
                block.data(static_cast<Eigen::Index>(complete), static_cast<Eigen::Index>(j)) =
                    *score;
            }
            block.row_labels.push_back(std::move(label));
            ++complete;
        }
    }
    return block;
}

std::pair<TtState, SearchSpace> reverse_axes(const TtState &state, const SearchSpace &space) {
    TtState next;
    next.core = 0;
    next.direction = state.direction == SweepDirection::Right ? SweepDirection::Left
                                                              : SweepDirection::Right;
    next.sweep_index = state.sweep_index;
    next.half_sweep_index = state.half_sweep_index;
    next.axis_order.assign(state.axis_order.rbegin(), state.axis_order.rend());
    next.right_sets.reserve(state.left_sets.size());
    for (const auto &prefix : state.left_sets) {
        next.right_sets.emplace_back(prefix.rbegin(), prefix.rend());
    }
    next.best_score = state.best_score;
    next.best_point = state.best_point;
    return {std::move(next), space.reversed()};
}

std::size_t tt_eval_bound(const SearchSpace &space, const TtConfig &cfg) {
    const std::size_t d = space.dim();
    if (d == 1) {
        return space.points(0);
    }
    const std::size_t r = cfg.rank;
    std::size_t per_sweep = 0;
    for (int orientation = 0; orientation < 2; ++orientation) {
        for (std::size_t c = 0; c + 1 < d; ++c) {
            const std::size_t axis = orientation == 0 ? c : d - 1 - c;
            per_sweep += space.points(axis) * r * (c == 0 ? 1 : r);
        }
    }
    return cfg.sweeps * per_sweep;
}

TrialReport tt_optimize(const Objective &objective, const SearchSpace &space,
                        const TtConfig &cfg) {
    validate(cfg);
    const std::size_t d = space.dim();
    Evaluator evaluator(space, objective, cfg.eval_budget, cfg.record_history);

    if (d == 1) {
        for (std::size_t i = 0; i < space.points(0); ++i) {
            if (!evaluator.request({i})) {
                break;
            }
        }
        return evaluator.take_report();
    }
    if (cfg.rank > space.min_points()) {
        fail(ErrorKind::RankExceedsAxis,
             "rank " + std::to_string(cfg.rank) + " exceeds smallest axis (" +
                 std::to_string(space.min_points()) + " points)");
    }

    TtState state = initial_state(space, cfg);
    SearchSpace current = space;
    for (std::size_t s = 0; s < cfg.sweeps; ++s) {
        for (std::size_t h = 0; h < 2; ++h) {
            state.sweep_index = s;
            state.half_sweep_index = h;
            if (!half_sweep(state, current, evaluator, cfg)) {
                return evaluator.take_report();
            }
            std::tie(state, current) = reverse_axes(state, current);
        }
    }
    return evaluator.take_report();
}

} // namespace tthpo
