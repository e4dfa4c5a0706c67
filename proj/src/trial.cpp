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

#include "tthpo/trial.hpp"

#include <cmath>
#include <sstream>

#include "tthpo/error.hpp"

namespace tthpo {

double checked_call(const Objective &objective, const GridPoint &point) {
    const double v = objective(point);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "objective returned " << v << " at indices (";
        for (std::size_t i = 0; i < point.indices.size(); ++i) {
            os << (i ? "," : "") << point.indices[i];
        }
        os << ") values (";
        for (std::size_t i = 0; i < point.values.size(); ++i) {
            os << (i ? "," : "") << point.values[i];
        }
        os << ")";
        fail(ErrorKind::ObjectiveFailure, os.str());
    }
    return v;
}

Evaluator::Evaluator(const SearchSpace &space, Objective objective,
                     std::optional<std::size_t> budget, bool record_history)
    : space_(space), objective_(std::move(objective)), budget_(budget),
      record_history_(record_history) {}

bool Evaluator::budget_exhausted() const noexcept {
    return budget_ && report_.distinct_evals >= *budget_;
}

std::optional<double> Evaluator::request(const GridIndex &indices) {
    if (auto it = cache_.find(indices); it != cache_.end()) {
        ++report_.total_requests;
        return it->second;
    }
    if (budget_exhausted()) {
        report_.budget_exhausted = true;
        return std::nullopt;
    }
    ++report_.total_requests;
    GridPoint point = space_.resolve(indices);
    const double v = checked_call(objective_, point);
    cache_.emplace(indices, v);
    const std::size_t index = report_.distinct_evals++;
    if (v > report_.best_score) {
        report_.best_score = v;
        report_.best_point = point;
    }
    if (record_history_) {
        report_.history.push_back({index, v, std::move(point)});
    }
    return v;
}

} // namespace tthpo
