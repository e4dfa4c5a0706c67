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

#include <gtest/gtest.h>

#include <random>

#include "tthpo/benchmarks.hpp"
#include "tthpo/error.hpp"
#include "tthpo/grid_search.hpp"

using namespace tthpo;

TEST(GridSearch, SchwefelD3) {
    const SearchSpace s = SearchSpace::uniform(3, -500, 500, 4);
    const auto r = grid_optimize([](const GridPoint &p) { return -schwefel(p.values); }, s);
    EXPECT_EQ(r.distinct_evals, 64u);
    EXPECT_EQ(r.total_requests, 64u);
    EXPECT_NEAR(r.best_score, 541.76, 0.5);
    EXPECT_EQ(r.best_point.indices, (GridIndex{0, 0, 0}));
}

TEST(GridSearch, LineScan) {
    const SearchSpace s({{"x", 0, 2, 3, AxisKind::Continuous}});
    const auto r = grid_optimize([](const GridPoint &p) { return p.values[0]; }, s);
    EXPECT_EQ(r.best_point.indices, (GridIndex{2}));
    EXPECT_EQ(r.distinct_evals, 3u);
}

TEST(GridSearch, LexicographicOrderAndHistory) {
    const SearchSpace s = SearchSpace::uniform(2, 0, 1, 3);
    const auto r = grid_optimize([](const GridPoint &) { return 0.0; }, s);
    ASSERT_EQ(r.history.size(), 9u);
    EXPECT_EQ(r.history[1].point.indices, (GridIndex{0, 1}));
    EXPECT_EQ(r.history[3].point.indices, (GridIndex{1, 0}));
    // Ties keep the first point.
    EXPECT_EQ(r.best_point.indices, (GridIndex{0, 0}));
}

TEST(GridSearch, ExactnessOnRandomTensors) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    for (int c = 0; c < 20; ++c) {
        const SearchSpace s = SearchSpace::uniform(3, 0, 1, 5);
        std::vector<double> table(125);
        for (auto &v : table) {
            v = normal(rng);
        }
        const auto r = grid_optimize(
            [&](const GridPoint &p) {
                return table[p.indices[0] * 25 + p.indices[1] * 5 + p.indices[2]];
            },
            s);
        EXPECT_EQ(r.best_score, *std::max_element(table.begin(), table.end()));
    }
}

TEST(GridSearch, BudgetRespected) {
    const SearchSpace s = SearchSpace::uniform(3, 0, 1, 4);
    for (std::size_t budget : {1u, 10u, 64u, 100u}) {
        GsConfig cfg;
        cfg.eval_budget = budget;
        const auto r = grid_optimize([](const GridPoint &p) { return p.values[2]; }, s, cfg);
        EXPECT_EQ(r.distinct_evals, std::min<std::size_t>(64, budget));
        EXPECT_EQ(r.budget_exhausted, budget < 64);
    }
}

TEST(GridSearch, Deterministic) {
    const SearchSpace s = SearchSpace::uniform(4, 0.25, 10, 3);
    auto f = [](const GridPoint &p) { return -vincent(p.values); };
    const auto a = grid_optimize(f, s);
    const auto b = grid_optimize(f, s);
    EXPECT_EQ(a.best_score, b.best_score);
    EXPECT_EQ(a.best_point, b.best_point);
}

TEST(GridSearch, NonFiniteObjectiveFails) {
    const SearchSpace s = SearchSpace::uniform(2, 0, 1, 2);
    try {
        grid_optimize([](const GridPoint &p) { return p.indices[1] ? NAN : 0.0; }, s);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ObjectiveFailure);
        EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
    }
}
