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

#include "tthpo/grid_search.hpp"

#include "tthpo/error.hpp"

namespace tthpo {

TrialReport grid_optimize(const Objective &objective, const SearchSpace &space,
                          const GsConfig &cfg) {
    if (cfg.eval_budget && *cfg.eval_budget < 1) {
        fail(ErrorKind::ConfigInvalid, "gs.eval_budget must be >= 1");
    }
    const std::size_t d = space.dim();
    TrialReport report;
    GridPoint point = space.resolve(GridIndex(d, 0));

    while (true) {
        if (cfg.eval_budget && report.distinct_evals >= *cfg.eval_budget) {
            report.budget_exhausted = report.distinct_evals < space.cardinality();
            break;
        }
        const double v = checked_call(objective, point);
        const std::size_t index = report.distinct_evals++;
        ++report.total_requests;
        if (v > report.best_score) {
            report.best_score = v;
            report.best_point = point;
        }
        if (cfg.record_history) {
            report.history.push_back({index, v, point});
        }

        // Odometer increment, last axis fastest.
        std::size_t p = d;
        while (p > 0) {
            --p;
            if (++point.indices[p] < space.points(p)) {
                point.values[p] = space.grid(p)[point.indices[p]];
                break;
            }
            point.indices[p] = 0;
            point.values[p] = space.grid(p)[0];
            if (p == 0) {
                return report;
            }
        }
    }
    return report;
}

} // namespace tthpo
