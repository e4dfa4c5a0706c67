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

#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "tthpo/benchmarks.hpp"
#include "tthpo/error.hpp"
#include "tthpo/harness.hpp"
#include "tthpo/maxvol.hpp"
#include "tthpo/quantum_layer.hpp"

namespace tthpo {

namespace {

// Largest |det| over all row subsets of size m.cols().
double brute_force_volume(const Eigen::MatrixXd &m) {
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto r = static_cast<std::size_t>(m.cols());
    std::vector<std::size_t> pick(r);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    double best = 0.0;
    while (true) {
        best = std::max(best, volume(m, pick));
        std::size_t i = r;
        while (i > 0 && pick[i - 1] == rows - r + i - 1) {
            --i;
        }
        if (i == 0) {
            return best;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < r; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

bool check(std::ostream &os, const char *name, bool ok, const std::string &detail) {
    os << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    return ok;
}

} // namespace

bool run_selftest(std::ostream &os) {
    bool all = true;
    try {
        const SearchSpace s3 = SearchSpace::uniform(3, -500, 500, 4);
        const Objective neg = [](const GridPoint &p) { return -schwefel(p.values); };
        const TrialReport gs = grid_optimize(neg, s3);
        all &= check(os, "schwefel-grid", std::abs(-gs.best_score + 541.76) <= 0.5 &&
                                              gs.distinct_evals == 64,
                     "best " + std::to_string(-gs.best_score) + ", evals " +
                         std::to_string(gs.distinct_evals));

        TtConfig tt;
        tt.seed = 1;
        const TrialReport ttr = tt_optimize(neg, s3, tt);
        all &= check(os, "schwefel-tt", ttr.best_score == gs.best_score &&
                                            ttr.distinct_evals <= tt_eval_bound(s3, tt),
                     "best " + std::to_string(-ttr.best_score) + ", evals " +
                         std::to_string(ttr.distinct_evals));

        std::mt19937_64 rng(11);
        std::normal_distribution<double> normal;
        int matched = 0;
        double worst = 0.0;
        const int cases = 50;
        for (int c = 0; c < cases; ++c) {
            Eigen::MatrixXd m(6, 2);
            for (Eigen::Index i = 0; i < m.size(); ++i) {
                m.data()[i] = normal(rng);
            }
            const RowSelection sel = maxvol(m, {1e-6, 100});
            worst = std::max(worst, dominance(m, sel.picked));
            matched += std::abs(sel.volume - brute_force_volume(m)) <=
                       1e-9 * std::max(1.0, sel.volume);
        }
        all &= check(os, "maxvol-brute-force", matched >= 49 && worst <= 1.0 + 1e-6,
                     std::to_string(matched) + "/" + std::to_string(cases) +
                         " optimal, max dominance " + std::to_string(worst));

        const QuantumLayerSpec q{3, 2, {}};
        const std::vector<double> x{0.3, -1.1, 0.7};
        std::vector<double> theta{0.2, -0.4, 1.3, 0.9, -2.1, 0.5};
        const StateVector psi = prepare_state(q, x, theta);
        const auto e = forward(q, x, theta);
        bool bounded = true;
        for (double v : e) {
            bounded &= std::abs(v) <= 1.0;
        }
        const LayerJacobian jac = gradient(q, x, theta);
        double err = 0.0;
        const double h = 1e-5;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            auto tp = theta;
            auto tm = theta;
            tp[j] += h;
            tm[j] -= h;
            const auto fp = forward(q, x, tp);
            const auto fm = forward(q, x, tm);
            for (std::size_t i = 0; i < e.size(); ++i) {
                err = std::max(err, std::abs((fp[i] - fm[i]) / (2 * h) -
                                             jac.d_theta(static_cast<Eigen::Index>(i),
                                                         static_cast<Eigen::Index>(j))));
            }
        }
        all &= check(os, "quantum-layer",
                     std::abs(psi.norm() - 1.0) < 1e-10 && bounded && err < 1e-6,
                     "norm error " + std::to_string(std::abs(psi.norm() - 1.0)) +
                         ", gradient error " + std::to_string(err));

        ModelSpec hybrid;
        hybrid.variant = ModelVariant::Hybrid;
        hybrid.n = 13;
        hybrid.q = 4;
        ModelSpec classical;
        classical.variant = ModelVariant::Classical;
        classical.n = 16;
        classical.m = 80;
        const Model hm = Model::build(hybrid, 0);
        all &= check(os, "parameter-count",
                     hm.parameter_count() == 6749 && hm.variational_count() == 52 &&
                         parameter_count(classical) == 9730,
                     "hybrid " + std::to_string(hm.parameter_count()) + ", classical " +
                         std::to_string(parameter_count(classical)));

        const std::vector<double> half{0.5, 0.5};
        const double ce = cross_entropy(half, 1);
        all &= check(os, "cross-entropy", std::abs(ce - std::log(2.0)) < 1e-12,
                     "ln2 case " + std::to_string(ce));
    } catch (const Error &e) {
        os << "FAIL selftest: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return false;
    }
    return all;
}

} // namespace tthpo
