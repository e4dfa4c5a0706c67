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
 * Black-box test functions (minimization semantics).
 *
 *  - Schwefel:        f(x) = -sum_i x_i sin(sqrt|x_i|),        x_i in [-500, 500]
 *  - Fletcher-Powell: f(x) = sum_i (A_i - B_i(x))^2,           x_i in [-pi, pi]
 *                     A_i = sum_j a_ij sin(alpha_j) + b_ij cos(alpha_j)
 *                     B_i = sum_j a_ij sin(x_j)     + b_ij cos(x_j)
 *  - Vincent:         f(x) = -(1/d) sum_i sin(10 ln x_i),      x_i in [0.25, 10]
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tthpo/search_space.hpp"

namespace tthpo {

enum class BenchmarkKind { Schwefel, FletcherPowell, Vincent };

std::string_view to_string(BenchmarkKind kind) noexcept;

struct Bounds {
    double lower;
    double upper;
};

Bounds benchmark_bounds(BenchmarkKind kind) noexcept;

/// Random Fletcher-Powell instance: a, b ~ U[-100, 100], alpha ~ U[-pi, pi].
class FletcherPowellInstance {
  public:
    static FletcherPowellInstance generate(std::size_t dim, std::uint64_t seed);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    /// Row-major dim x dim.
    [[nodiscard]] std::span<const double> a() const noexcept { return a_; }
    [[nodiscard]] std::span<const double> b() const noexcept { return b_; }
    [[nodiscard]] std::span<const double> alpha() const noexcept { return alpha_; }
    /// A_i, the value of B(x) at x = alpha.
    [[nodiscard]] std::span<const double> target() const noexcept { return target_; }

  private:
    std::size_t dim_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<double> alpha_;
    std::vector<double> target_;
};

/**
 * @brief Fletcher-Powell restricted to a grid, evaluated from a term table.
 *
 * Stores a_ij sin(x_jk) + b_ij cos(x_jk) for every grid value k of axis j and
 * sums terms in the same order as fletcher_powell, so results are bitwise
 * identical to the direct formula at grid points.
 */
class FletcherPowellTable {
  public:
    FletcherPowellTable(const FletcherPowellInstance &inst, const SearchSpace &space);

    [[nodiscard]] double operator()(const GridIndex &indices) const;
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double term(std::size_t i, std::size_t j, std::size_t k) const {
        return terms_[(i * dim_ + j) * stride_ + k];
    }
    [[nodiscard]] double target(std::size_t i) const { return target_[i]; }

  private:
    std::size_t dim_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> terms_;
    std::vector<double> target_;
};

double schwefel(std::span<const double> x);
double fletcher_powell(std::span<const double> x, const FletcherPowellInstance &inst);
double vincent(std::span<const double> x);

struct BenchmarkFn {
    BenchmarkKind kind = BenchmarkKind::Schwefel;
    std::size_t dim = 1;
    std::vector<Bounds> domain;
    std::optional<FletcherPowellInstance> instance;

    /// Builds the function with its standard domain; Fletcher-Powell draws an
    /// instance from `seed`.
    static BenchmarkFn make(BenchmarkKind kind, std::size_t dim, std::uint64_t seed = 0);

    [[nodiscard]] double operator()(std::span<const double> x) const;

    /// d axes over the function's domain with `points` grid points each.
    [[nodiscard]] SearchSpace grid(std::size_t points) const;
};

} // namespace tthpo
