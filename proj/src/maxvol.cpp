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

#include "tthpo/maxvol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

constexpr double kSingularRelTol = 1e-12;

void check_shape(const Eigen::MatrixXd &m) {
    if (m.cols() < 1 || m.rows() < m.cols()) {
        fail(ErrorKind::ShapeMismatch, "maxvol needs rows >= cols >= 1, got " +
                                           std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        fail(ErrorKind::InvalidArgument, "maxvol input has non-finite entries");
    }
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd &m, std::span<const std::size_t> rows) {
    Eigen::MatrixXd s(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        s.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(rows[k]));
    }
    return s;
}

// Inverse of the selected block, ridge-regularized when (numerically) singular.
Eigen::MatrixXd regularized_inverse(Eigen::MatrixXd s) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
    lu.setThreshold(kSingularRelTol);
    if (lu.isInvertible()) {
        return lu.inverse();
    }
    // Ridge relative to the block magnitude so it survives rounding.
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    s.diagonal().array() += kMaxvolRidge * scale;
    Eigen::PartialPivLU<Eigen::MatrixXd> plu(s);
    const double det = plu.determinant();
    Eigen::MatrixXd inv = plu.inverse();
    if (det == 0.0 || !std::isfinite(det) || !inv.allFinite()) {
        fail(ErrorKind::RankDeficient,
             "selected submatrix is singular even after ridge regularization");
    }
    return inv;
}

} // namespace

std::vector<std::size_t> pivoted_rows(const Eigen::MatrixXd &m) {
    check_shape(m);
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Eigen::MatrixXd w = m;
    std::vector<bool> used(static_cast<std::size_t>(rows), false);
    std::vector<std::size_t> picked;
    picked.reserve(static_cast<std::size_t>(cols));
    for (Eigen::Index k = 0; k < cols; ++k) {
        Eigen::Index pivot = -1;
        double best = -1.0;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (used[static_cast<std::size_t>(i)]) {
                continue;
            }
            const double a = std::abs(w(i, k));
            if (a > best) {
                best = a;
                pivot = i;
            }
        }
        used[static_cast<std::size_t>(pivot)] = true;
        picked.push_back(static_cast<std::size_t>(pivot));
        const double p = w(pivot, k);
        if (p == 0.0) {
            continue;
        }
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (used[static_cast<std::size_t>(i)]) {
                continue;
            }
            const double f = w(i, k) / p;
            w.row(i).tail(cols - k) -= f * w.row(pivot).tail(cols - k);
        }
    }
    return picked;
}

double volume(const Eigen::MatrixXd &m, std::span<const std::size_t> rows) {
    if (rows.size() != static_cast<std::size_t>(m.cols())) {
        fail(ErrorKind::ShapeMismatch, "volume needs exactly cols rows");
    }
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a] >= static_cast<std::size_t>(m.rows())) {
            fail(ErrorKind::IndexOutOfRange, "row " + std::to_string(rows[a]));
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (rows[a] == rows[b]) {
                fail(ErrorKind::InvalidArgument, "volume rows must be distinct");
            }
        }
    }
    return std::abs(gather_rows(m, rows).partialPivLu().determinant());
}

double dominance(const Eigen::MatrixXd &m, std::span<const std::size_t> rows) {
    const Eigen::MatrixXd b = m * regularized_inverse(gather_rows(m, rows));
    return b.cwiseAbs().maxCoeff();
}

RowSelection maxvol(const Eigen::MatrixXd &m, const MaxvolOptions &opts) {
    check_shape(m);
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();

    RowSelection out;
    out.picked = pivoted_rows(m);
    std::vector<bool> selected(static_cast<std::size_t>(rows), false);
    for (auto p : out.picked) {
        selected[p] = true;
    }

    std::vector<std::size_t> best_rows = out.picked;
    double best_volume = volume(m, out.picked);

    for (std::size_t iter = 0; iter <= opts.max_iters; ++iter) {
        const Eigen::MatrixXd b = m * regularized_inverse(gather_rows(m, out.picked));

        // Largest coefficient outside the selection; row-major scan so ties
        // resolve to the lowest row, then the lowest column.
        double top = 0.0;
        Eigen::Index top_i = -1;
        Eigen::Index top_j = -1;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (selected[static_cast<std::size_t>(i)]) {
                continue;
            }
            for (Eigen::Index j = 0; j < cols; ++j) {
                const double a = std::abs(b(i, j));
                if (a > top) {
                    top = a;
                    top_i = i;
                    top_j = j;
                }
            }
        }
        if (top <= 1.0 + opts.tol) {
            out.certified = true;
            out.volume = volume(m, out.picked);
            return out;
        }
        if (iter == opts.max_iters) {
            break;
        }
        auto &slot = out.picked[static_cast<std::size_t>(top_j)];
        selected[slot] = false;
        slot = static_cast<std::size_t>(top_i);
        selected[slot] = true;
        ++out.swaps;

        const double v = volume(m, out.picked);
        if (v >= best_volume) {
            best_volume = v;
            best_rows = out.picked;
        }
    }

    out.picked = std::move(best_rows);
    out.volume = best_volume;
    out.certified = false;
    return out;
}

RowSelection maxvol(const ScoreMatrix &m, const MaxvolOptions &opts) {
    if (!m.row_labels.empty() && m.row_labels.size() != m.rows()) {
        fail(ErrorKind::ShapeMismatch, "score matrix row_labels size mismatch");
    }
    return maxvol(m.data, opts);
}

} // namespace tthpo
