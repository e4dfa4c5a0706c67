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
 * Seeded experiment driver: config parsing, trial suites, CSV reports and
 * report comparison.
 *
 * Config files are INI documents:
 *
 *     [experiment]   method, objective, trials, base_seed, output, record_wall_ms
 *     [space]        dims, points
 *     [axis:NAME]    lower, upper, points, kind   (model objectives only)
 *     [tt]           rank, sweeps, eval_budget, maxvol_tol, maxvol_max_iters,
 *                    transform, transform_width
 *     [gs]           eval_budget
 *     [model]        train_size, test_size, raw_dim, separation, offset,
 *                    data_seed, epochs, batch_size, weight_decay, grad_clip,
 *                    quantum_gradient
 */
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tthpo/grid_search.hpp"
#include "tthpo/hybrid_model.hpp"
#include "tthpo/search_space.hpp"
#include "tthpo/tt_optimizer.hpp"

namespace tthpo {

enum class Method { Tt, Gs };
enum class ObjectiveKind { Schwefel, FletcherPowell, Vincent, ModelClassical, ModelHybrid };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(ObjectiveKind k) noexcept;
Method parse_method(std::string_view s);
ObjectiveKind parse_objective(std::string_view s);
/// Benchmarks are minimized; model accuracy is maximized.
bool is_minimization(ObjectiveKind k) noexcept;

struct ModelSettings {
    SyntheticSpec data;
    TrainConfig train;
};

struct ExperimentConfig {
    Method method = Method::Tt;
    ObjectiveKind objective = ObjectiveKind::Schwefel;
    std::vector<std::size_t> dims{3};
    std::size_t points = 4;
    /// Replaces the default hyperparameter space of model objectives.
    std::vector<AxisSpec> axes;
    TtConfig tt;
    GsConfig gs;
    std::size_t trials = 100;
    std::uint64_t base_seed = 0;
    /// CSV path; empty writes nothing.
    std::filesystem::path output;
    /// Off by default so reruns produce identical files.
    bool record_wall_ms = false;
    ModelSettings model;
};

/// Throws ConfigInvalid naming the offending field.
void validate(const ExperimentConfig &cfg);
ExperimentConfig parse_config(std::istream &is, const std::string &source = "<config>");
ExperimentConfig load_config(const std::filesystem::path &path);

/// Search space of one suite dimension. Model objectives ignore `d`.
SearchSpace experiment_space(const ExperimentConfig &cfg, std::size_t d);

/// Applies TTHPO_OUTPUT_DIR, which replaces the directory part of `path`.
std::filesystem::path resolve_output(const std::filesystem::path &path);

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Method method = Method::Tt;
    ObjectiveKind objective = ObjectiveKind::Schwefel;
    std::size_t d = 0;
    std::size_t n = 0;
    std::optional<std::size_t> r;
    /// In the objective's own sign: benchmark minima are negative numbers.
    double best_fitness = 0.0;
    std::size_t distinct_evals = 0;
    std::size_t total_requests = 0;
    double wall_ms = 0.0;
};

struct DimSummary {
    std::size_t d = 0;
    std::size_t n = 0;
    std::optional<std::size_t> r;
    std::size_t trials = 0;
    double mean_best = 0.0;
    double min_best = 0.0;
    double median_best = 0.0;
    double max_best = 0.0;
    /// Expected runtime: the largest distinct-evaluation count over trials.
    std::size_t er = 0;
    std::size_t max_requests = 0;
    double wall_ms = 0.0;
};

/// Aggregates rows of one dimension; throws InvalidArgument on an empty span.
DimSummary summarize(std::span<const TrialRow> rows);

struct SuiteReport {
    Method method = Method::Tt;
    ObjectiveKind objective = ObjectiveKind::Schwefel;
    std::vector<TrialRow> rows;
    std::vector<DimSummary> summaries;
    bool interrupted = false;
};

/**
 * @brief Runs every (d, trial) pair of the config.
 *
 * Trial t uses seed base_seed + t for the optimizer and for any random
 * problem instance. Minimized objectives are negated for the maximizing
 * optimizers and reported with their own sign. With an output path the CSV
 * and a `.summary.json` file are written as trials finish. An interrupt
 * request stops the suite after flushing completed rows.
 */
SuiteReport run_suite(const ExperimentConfig &cfg);

/// Installs a SIGINT handler that asks running suites to stop.
void install_interrupt_handler();
void request_interrupt() noexcept;
void clear_interrupt() noexcept;
bool interrupt_requested() noexcept;

inline constexpr std::string_view kCsvHeader =
    "trial,seed,method,objective,d,n,r,best_fitness,distinct_evals,total_requests,wall_ms";

/// Detail row; summary rows carry "summary" in the trial column.
std::string format_row(const TrialRow &row);
std::string format_summary(const DimSummary &s, Method method, ObjectiveKind objective);

void write_report_csv(const SuiteReport &report, const std::filesystem::path &path);
void write_summary_json(const SuiteReport &report, const std::filesystem::path &path);
/// Reads detail rows and recomputes summaries; summary rows in the file are
/// checked against the recomputation.
SuiteReport read_report_csv(const std::filesystem::path &path);

struct ComparisonRow {
    std::size_t d = 0;
    std::size_t n = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double delta_mean = 0.0;
    std::size_t er_a = 0;
    std::size_t er_b = 0;
    /// er_b / er_a.
    double er_ratio = 0.0;
    /// ER relative to the previous dimension row; 0 on the first row.
    double growth_a = 0.0;
    double growth_b = 0.0;
};

struct Comparison {
    Method method_a = Method::Tt;
    Method method_b = Method::Tt;
    ObjectiveKind objective = ObjectiveKind::Schwefel;
    std::vector<ComparisonRow> rows;
};

/// Rows sorted by d. Throws MismatchedExperiments unless both reports cover
/// the same objective, dimensions and grid sizes.
Comparison compare(const SuiteReport &a, const SuiteReport &b);
void write_comparison(const Comparison &c, std::ostream &os);

/// Fast oracle checks across all modules; prints one line per check.
bool run_selftest(std::ostream &os);

} // namespace tthpo
