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
 * Maximal-volume row selection in tall matrices.
 *
 * Given an m x r matrix M (m >= r), `maxvol` returns r rows whose square
 * submatrix has (locally) maximal |det|. A selection is certified when the
 * coefficient matrix B = M * M[picked]^-1 satisfies max |B_ij| <= 1 + tol.
 */

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tthpo/search_space.hpp"

namespace tthpo {

/// A block of objective evaluations; one candidate index-combination per row.
struct ScoreMatrix {
    Eigen::MatrixXd data;
    std::vector<GridIndex> row_labels;

    [[nodiscard]] std::size_t rows() const noexcept {
        return static_cast<std::size_t>(data.rows());
    }
    [[nodiscard]] std::size_t cols() const noexcept {
        return static_cast<std::size_t>(data.cols());
    }
};

struct MaxvolOptions {
    double tol = 0.01;
    std::size_t max_iters = 100;
};

struct RowSelection {
    std::vector<std::size_t> picked;
    double volume = 0.0;
    bool certified = false;
    std::size_t swaps = 0;
};

/// Ridge added to the selected submatrix diagonal when it is singular,
/// scaled by max(1, max |entry|) of that submatrix.
inline constexpr double kMaxvolRidge = 1e-12;

/// Starting rows of maxvol: pivots of Gaussian elimination with partial
/// pivoting, ties to the lowest row index.
std::vector<std::size_t> pivoted_rows(const Eigen::MatrixXd &m);

RowSelection maxvol(const Eigen::MatrixXd &m, const MaxvolOptions &opts = {});
RowSelection maxvol(const ScoreMatrix &m, const MaxvolOptions &opts = {});

/// |det| of the square submatrix formed by `rows`; singular selections give 0.
double volume(const Eigen::MatrixXd &m, std::span<const std::size_t> rows);

/// max |B_ij| of B = M * M[rows]^-1, the dominance certificate quantity.
double dominance(const Eigen::MatrixXd &m, std::span<const std::size_t> rows);

} // namespace tthpo
