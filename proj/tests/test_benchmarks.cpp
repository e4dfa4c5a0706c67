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

#include <cmath>
#include <numbers>
#include <random>

#include "tthpo/benchmarks.hpp"
#include "tthpo/error.hpp"
#include "tthpo/grid_search.hpp"

using namespace tthpo;

namespace {

// Smallest value of a function over every point of a uniform grid.
template <class F> double enumerate_min(std::size_t d, double lo, double hi, std::size_t n, F f) {
    const SearchSpace s = SearchSpace::uniform(d, lo, hi, n);
    GridIndex idx(d, 0);
    double best = INFINITY;
    while (true) {
        best = std::min(best, f(s.resolve(idx).values));
        std::size_t p = d;
        while (p > 0) {
            --p;
            if (++idx[p] < n) {
                break;
            }
            idx[p] = 0;
            if (p == 0) {
                return best;
            }
        }
    }
}

} // namespace

TEST(Schwefel, Origin) {
    const std::vector<double> x(3, 0.0);
    EXPECT_EQ(schwefel(x), 0.0);
}

TEST(Schwefel, LowerCorner) {
    const std::vector<double> x(3, -500.0);
    EXPECT_NEAR(schwefel(x), -541.8, 0.1);
    EXPECT_NEAR(schwefel(x), -3 * -500 * std::sin(std::sqrt(500.0)), 1e-9);
}

TEST(Schwefel, GridMinimumD3) {
    const double best = enumerate_min(3, -500, 500, 4, [](auto x) { return schwefel(x); });
    EXPECT_NEAR(best, -541.76, 0.5);
}

TEST(Schwefel, DomainViolation) {
    const std::vector<double> x{0.0, 500.5};
    try {
        schwefel(x);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
    }
}

TEST(FletcherPowell, ZeroAtAlpha) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = FletcherPowellInstance::generate(5, seed);
        EXPECT_EQ(fletcher_powell(inst.alpha(), inst), 0.0);
    }
}

TEST(FletcherPowell, NonNegativeAndReproducible) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = FletcherPowellInstance::generate(4, seed);
        const auto b = FletcherPowellInstance::generate(4, seed);
        std::vector<double> x(4);
        for (auto &v : x) {
            v = u(rng);
        }
        EXPECT_GE(fletcher_powell(x, a), 0.0);
        EXPECT_EQ(fletcher_powell(x, a), fletcher_powell(x, b));
    }
}

TEST(FletcherPowell, InstanceCoefficientRanges) {
    const auto inst = FletcherPowellInstance::generate(10, 77);
    for (double v : inst.a()) {
        EXPECT_LE(std::abs(v), 100.0);
    }
    for (double v : inst.b()) {
        EXPECT_LE(std::abs(v), 100.0);
    }
    for (double v : inst.alpha()) {
        EXPECT_LE(std::abs(v), std::numbers::pi);
    }
}

TEST(FletcherPowell, TableIsBitwiseEqualToDirectFormula) {
    for (std::size_t d : {1u, 3u, 6u}) {
        const auto inst = FletcherPowellInstance::generate(d, 10 + d);
        const SearchSpace s =
            SearchSpace::uniform(d, -std::numbers::pi, std::numbers::pi, 4);
        const FletcherPowellTable table(inst, s);
        std::mt19937_64 rng(d);
        std::uniform_int_distribution<std::size_t> pick(0, 3);
        for (int c = 0; c < 500; ++c) {
            GridIndex idx(d);
            for (auto &i : idx) {
                i = pick(rng);
            }
            EXPECT_EQ(table(idx), fletcher_powell(s.resolve(idx).values, inst));
        }
    }
}

TEST(Vincent, PeakPoint) {
    const std::vector<double> x(4, std::exp(std::numbers::pi / 20));
    EXPECT_NEAR(vincent(x), -1.0, 1e-15);
}

TEST(Vincent, GridMinimumIsDimensionIndependent) {
    const double b3 = enumerate_min(3, 0.25, 10, 4, [](auto x) { return vincent(x); });
    const double b6 = enumerate_min(6, 0.25, 10, 4, [](auto x) { return vincent(x); });
    EXPECT_NEAR(b3, b6, 1e-12);
    const auto g = discretize({"x", 0.25, 10, 4, AxisKind::Continuous});
    double axis_best = INFINITY;
    for (double v : g) {
        axis_best = std::min(axis_best, -std::sin(10 * std::log(v)));
    }
    EXPECT_NEAR(b3, axis_best, 1e-12);
}

TEST(Vincent, DomainViolation) {
    const std::vector<double> x{0.2};
    EXPECT_THROW(vincent(x), Error);
}

TEST(Separability, PerAxisMinimizationEqualsJointGrid) {
    const auto g = discretize({"x", -500, 500, 4, AxisKind::Continuous});
    double axis_best = INFINITY;
    for (double v : g) {
        axis_best = std::min(axis_best, -v * std::sin(std::sqrt(std::abs(v))));
    }
    EXPECT_NEAR(enumerate_min(3, -500, 500, 4, [](auto x) { return schwefel(x); }),
                3 * axis_best, 1e-9);
}

TEST(BenchmarkFn, MakeEvaluatesAndBuildsGrid) {
    const auto fp = BenchmarkFn::make(BenchmarkKind::FletcherPowell, 3, 5);
    ASSERT_TRUE(fp.instance.has_value());
    EXPECT_EQ(fp(fp.instance->alpha()), 0.0);
    const SearchSpace s = fp.grid(4);
    EXPECT_EQ(s.dim(), 3u);
    EXPECT_DOUBLE_EQ(s.grid(0).front(), -std::numbers::pi);
    const auto sch = BenchmarkFn::make(BenchmarkKind::Schwefel, 2);
    const std::vector<double> z{0.0, 0.0};
    EXPECT_EQ(sch(z), 0.0);
    EXPECT_EQ(to_string(BenchmarkKind::Vincent), "vincent");
}

TEST(Benchmarks, FiniteOnAllGridPoints) {
    for (auto kind : {BenchmarkKind::Schwefel, BenchmarkKind::FletcherPowell,
                      BenchmarkKind::Vincent}) {
        const auto f = BenchmarkFn::make(kind, 3, 1);
        const SearchSpace s = f.grid(6);
        const TrialReport r = grid_optimize(
            [&](const GridPoint &p) { return f(p.values); }, s);
        EXPECT_EQ(r.distinct_evals, 216u);
    }
}
