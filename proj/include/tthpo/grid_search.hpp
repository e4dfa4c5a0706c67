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

#include <cstddef>
#include <cstdint>
#include <optional>

#include "tthpo/search_space.hpp"
#include "tthpo/trial.hpp"

namespace tthpo {

enum class GridTraversal { Lexicographic };

struct GsConfig {
    std::optional<std::size_t> eval_budget;
    GridTraversal traversal = GridTraversal::Lexicographic;
    /// Unused; kept so both optimizers report a seed.
    std::uint64_t seed = 0;
    bool record_history = true;
};

/**
 * @brief Exhaustive scan in lexicographic index order (last axis fastest).
 *
 * Stops after `eval_budget` points when set. Ties keep the lexicographically
 * first point. The grid visits each point once, so no cache is needed.
 */
TrialReport grid_optimize(const Objective &objective, const SearchSpace &space,
                          const GsConfig &cfg = {});

} // namespace tthpo
