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
 * Classification heads on 512-wide backbone features.
 *
 *   classical: dense(512 -> n) -> tanh -> dense(n -> m) -> tanh -> dense(m -> k)
 *   hybrid:    dense(512 -> n) -> quantum layer (n qubits, depth q) -> dense(n -> k)
 *
 * Logits go through softmax and a cross-entropy loss. Training uses Adam with
 * L2 weight decay, global-norm gradient clipping, and a step learning-rate
 * schedule lr(e) = alpha0 * alpha_factor^floor(e / alpha_step).
 */

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tthpo/quantum_layer.hpp"
#include "tthpo/search_space.hpp"
#include "tthpo/trial.hpp"

namespace tthpo {

enum class ModelVariant { Classical, Hybrid };

std::string_view to_string(ModelVariant v) noexcept;

inline constexpr std::size_t kBackboneWidth = 512;

struct ModelSpec {
    ModelVariant variant = ModelVariant::Hybrid;
    std::size_t input_dim = kBackboneWidth;
    /// Neurons of the first dense layer, equal to the qubit count for hybrid.
    std::size_t n = 4;
    /// Circuit depth (hybrid only).
    std::size_t q = 1;
    /// Hidden width of the second dense layer (classical only).
    std::size_t m = 4;
    std::size_t classes = 2;
    std::vector<RotationAxis> axis_schedule;
};

void validate(const ModelSpec &spec);

/// Closed-form parameter count of `spec`.
std::size_t parameter_count(const ModelSpec &spec);

struct ParamBlock {
    std::string name;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t offset = 0;

    [[nodiscard]] std::size_t size() const noexcept { return rows * cols; }
};

struct Dataset {
    /// One sample per row.
    Eigen::MatrixXd features;
    std::vector<std::size_t> labels;
    std::size_t classes = 2;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
};

void validate(const Dataset &data);

/// Counts true-class probabilities that had to be clamped in cross_entropy.
struct LossDiagnostics {
    std::size_t clamped = 0;
};

inline constexpr double kProbabilityFloor = 1e-12;

/**
 * @brief -log p[label] for a probability vector.
 *
 * Throws DomainViolation if probs is not a distribution (sum 1 within 1e-6,
 * entries in [0, 1]) or label is out of range. A zero true-class probability
 * is clamped to 1e-12 and counted in `diag`.
 */
double cross_entropy(std::span<const double> probs, std::size_t label,
                     LossDiagnostics *diag = nullptr);

Eigen::VectorXd softmax(const Eigen::VectorXd &logits);

class Model {
  public:
    /// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)); angles ~ U(-pi, pi).
    static Model build(const ModelSpec &spec, std::uint64_t seed);

    /// Model with explicit parameters (layout as in `blocks()`).
    static Model from_parameters(const ModelSpec &spec, Eigen::VectorXd params);

    [[nodiscard]] const ModelSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t parameter_count() const noexcept {
        return static_cast<std::size_t>(params_.size());
    }
    [[nodiscard]] std::size_t variational_count() const noexcept;
    [[nodiscard]] const std::vector<ParamBlock> &blocks() const noexcept { return blocks_; }
    [[nodiscard]] const Eigen::VectorXd &parameters() const noexcept { return params_; }
    Eigen::VectorXd &parameters() noexcept { return params_; }

    [[nodiscard]] Eigen::VectorXd logits(const Eigen::VectorXd &x) const;
    [[nodiscard]] Eigen::VectorXd probabilities(const Eigen::VectorXd &x) const;
    [[nodiscard]] std::size_t predict(const Eigen::VectorXd &x) const;
    [[nodiscard]] double accuracy(const Dataset &data) const;

    /// Mean cross-entropy over `rows` of `data`; gradient w.r.t. parameters()
    /// written to `grad` (resized).
    double loss_and_gradient(const Dataset &data, std::span<const std::size_t> rows,
                             Eigen::VectorXd &grad,
                             QuantumGradient method = QuantumGradient::ParameterShift,
                             LossDiagnostics *diag = nullptr) const;

    /// Mean cross-entropy without gradient.
    double loss(const Dataset &data, std::span<const std::size_t> rows) const;

  private:
    Model(ModelSpec spec, std::vector<ParamBlock> blocks, Eigen::VectorXd params);

    [[nodiscard]] const ParamBlock &block(std::string_view name) const;
    [[nodiscard]] QuantumLayerSpec quantum_spec() const;

    ModelSpec spec_;
    std::vector<ParamBlock> blocks_;
    Eigen::VectorXd params_;
};

/// Parameter layout of a model built from `spec`.
std::vector<ParamBlock> parameter_layout(const ModelSpec &spec);

struct TrainConfig {
    std::size_t epochs = 10;
    double alpha0 = 5e-4;
    std::size_t alpha_step = 8;
    double alpha_factor = 0.1;
    double weight_decay = 1e-4;
    double grad_clip = 1.0;
    std::size_t batch_size = 4;
    std::uint64_t seed = 0;
    QuantumGradient quantum_gradient = QuantumGradient::ParameterShift;
};

void validate(const TrainConfig &cfg);

/// Learning rate during 0-based epoch `epoch`.
double learning_rate(const TrainConfig &cfg, std::size_t epoch);

struct EpochRecord {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double test_accuracy = 0.0;
};

/// Trains in place; deterministic for a fixed cfg.seed. Zero epochs is a no-op.
std::vector<EpochRecord> train(Model &model, const Dataset &train_set, const Dataset &test_set,
                               const TrainConfig &cfg);

struct SyntheticSpec {
    std::size_t train_size = 89;
    std::size_t test_size = 88;
    std::size_t raw_dim = 8;
    std::size_t input_dim = kBackboneWidth;
    std::size_t classes = 2;
    /// Distance between class means, in units of the per-coordinate noise.
    double separation = 4.0;
    /// Norm of a shift shared by every class mean, so the clusters do not
    /// sit symmetric about the origin.
    double offset = 2.0;
    std::uint64_t seed = 0;
};

struct SplitDataset {
    Dataset train;
    Dataset test;
};

/**
 * @brief Gaussian clusters lifted to `input_dim` features.
 *
 * Raw samples are drawn around one mean per class in `raw_dim` dimensions,
 * then mapped through a fixed seeded random linear map standing in for a
 * frozen feature extractor. Labels are balanced.
 */
SplitDataset make_synthetic_dataset(const SyntheticSpec &spec);

/// CSV with header f0..f{D-1},label.
void write_dataset_csv(const Dataset &data, const std::filesystem::path &path);
Dataset read_dataset_csv(const std::filesystem::path &path, std::size_t classes);

/// Writes `path` (one value per line) and `path`.manifest.json (shapes).
void save_checkpoint(const Model &model, const std::filesystem::path &path);
Model load_checkpoint(const std::filesystem::path &path);

/// The five tunable hyperparameters of one model trial.
struct HyperParams {
    std::size_t n = 4;
    std::size_t q = 1;
    std::size_t m = 4;
    double alpha0 = 5e-4;
    std::size_t alpha_step = 1;
    double alpha_factor = 0.1;
};

/**
 * @brief Search space over the tunable hyperparameters.
 *
 * Axes and ranges: n in [4, 16], q in [1, 5] (hybrid) or nq in [4, 80]
 * (classical), alpha0 in [1e-4, 1e-3], alpha_step in [1, 8],
 * alpha_factor in [0.1, 0.2]. Integer axes are integer-kind.
 */
SearchSpace model_search_space(ModelVariant variant, std::size_t points);

/// Reads the named axes (n, q | nq, alpha0, alpha_step, alpha_factor).
HyperParams resolve_hyperparams(const SearchSpace &space, const GridPoint &point,
                                ModelVariant variant);

struct ModelObjectiveSetup {
    ModelVariant variant = ModelVariant::Classical;
    SplitDataset data;
    /// epochs, weight decay, clipping, batch size, seed; the tuned fields are
    /// overwritten per trial.
    TrainConfig train;
    std::uint64_t model_seed = 0;
};

/// Builds, trains and returns final test accuracy for one hyperparameter set.
double train_and_score(const HyperParams &hp, const ModelObjectiveSetup &setup);

/// Objective over `space` for the optimizers; failures surface as ObjectiveFailure.
Objective make_accuracy_objective(const SearchSpace &space, ModelObjectiveSetup setup);

} // namespace tthpo
