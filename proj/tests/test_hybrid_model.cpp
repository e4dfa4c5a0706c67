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
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "tthpo/error.hpp"
#include "tthpo/hybrid_model.hpp"

using namespace tthpo;

namespace {

ModelSpec classical(std::size_t n, std::size_t m) {
    ModelSpec s;
    s.variant = ModelVariant::Classical;
    s.n = n;
    s.m = m;
    return s;
}

ModelSpec hybrid(std::size_t n, std::size_t q) {
    ModelSpec s;
    s.variant = ModelVariant::Hybrid;
    s.n = n;
    s.q = q;
    return s;
}

const SplitDataset &data() {
    static const SplitDataset d = [] {
        SyntheticSpec s;
        s.seed = 7;
        return make_synthetic_dataset(s);
    }();
    return d;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("tthpo_model_" + name);
}

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorKind::InvalidArgument;
}

// Central-difference check of loss_and_gradient on rows 0..9.
double max_relative_gradient_error(const ModelSpec &spec, QuantumGradient method,
                                   std::size_t stride) {
    const Model model = Model::build(spec, 3);
    std::vector<std::size_t> rows(10);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    Eigen::VectorXd grad;
    model.loss_and_gradient(data().train, rows, grad, method);
    double worst = 0.0;
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < grad.size(); i += static_cast<Eigen::Index>(stride)) {
        Eigen::VectorXd p = model.parameters();
        p(i) += h;
        const double up = Model::from_parameters(spec, p).loss(data().train, rows);
        p(i) -= 2 * h;
        const double down = Model::from_parameters(spec, p).loss(data().train, rows);
        const double fd = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(fd - grad(i)) / std::max(1e-3, std::abs(fd)));
    }
    return worst;
}

} // namespace

TEST(ParameterCount, KnownArchitectures) {
    const Model h = Model::build(hybrid(13, 4), 0);
    EXPECT_EQ(h.parameter_count(), 6749u);
    EXPECT_EQ(h.variational_count(), 52u);
    EXPECT_EQ(parameter_count(classical(16, 80)), 9730u);
    EXPECT_EQ(parameter_count(hybrid(1, 1)), 518u);
    EXPECT_EQ(parameter_count(classical(5, 80)), 3207u);
}

TEST(ParameterCount, FormulaAcrossRanges) {
    for (std::size_t n = 4; n <= 16; ++n) {
        for (std::size_t q = 1; q <= 5; ++q) {
            const auto layout = parameter_layout(hybrid(n, q));
            std::size_t total = 0;
            for (const auto &b : layout) {
                EXPECT_EQ(b.offset, total);
                total += b.size();
            }
            EXPECT_EQ(total, 513 * n + n * q + (n + 1) * 2);
            EXPECT_EQ(parameter_count(hybrid(n, q)), total);
        }
        for (std::size_t m = 4; m <= 80; m += 4) {
            const auto layout = parameter_layout(classical(n, m));
            std::size_t total = 0;
            for (const auto &b : layout) {
                total += b.size();
            }
            EXPECT_EQ(total, 513 * n + (n + 1) * m + (m + 1) * 2);
            EXPECT_EQ(parameter_count(classical(n, m)), total);
        }
    }
}

TEST(ModelSpec, Validation) {
    EXPECT_EQ(kind_of([] { validate(hybrid(0, 1)); }), ErrorKind::SpecInvalid);
    EXPECT_EQ(kind_of([] { validate(hybrid(17, 1)); }), ErrorKind::SpecInvalid);
    EXPECT_EQ(kind_of([] { validate(hybrid(4, 0)); }), ErrorKind::SpecInvalid);
    EXPECT_EQ(kind_of([] { validate(classical(4, 0)); }), ErrorKind::SpecInvalid);
    ModelSpec one_class = classical(4, 4);
    one_class.classes = 1;
    EXPECT_EQ(kind_of([&] { validate(one_class); }), ErrorKind::SpecInvalid);
}

TEST(CrossEntropy, ClosedForms) {
    const std::vector<double> certain{1.0, 0.0};
    const std::vector<double> half{0.5, 0.5};
    const std::vector<double> skew{0.1, 0.9};
    EXPECT_EQ(cross_entropy(certain, 0), 0.0);
    EXPECT_NEAR(cross_entropy(half, 1), 0.6931471805599453, 1e-15);
    EXPECT_NEAR(cross_entropy(skew, 0), 2.302585092994046, 1e-12);
}

TEST(CrossEntropy, ZeroTrueProbabilityIsClampedAndCounted) {
    const std::vector<double> certain{1.0, 0.0};
    LossDiagnostics diag;
    EXPECT_NEAR(cross_entropy(certain, 1, &diag), -std::log(kProbabilityFloor), 1e-12);
    EXPECT_EQ(diag.clamped, 1u);
}

TEST(CrossEntropy, RejectsBadInput) {
    const std::vector<double> bad_sum{0.5, 0.6};
    const std::vector<double> negative{-0.1, 1.1};
    const std::vector<double> ok{0.5, 0.5};
    EXPECT_EQ(kind_of([&] { cross_entropy(bad_sum, 0); }), ErrorKind::DomainViolation);
    EXPECT_EQ(kind_of([&] { cross_entropy(negative, 0); }), ErrorKind::DomainViolation);
    EXPECT_EQ(kind_of([&] { cross_entropy(ok, 2); }), ErrorKind::DomainViolation);
}

TEST(Softmax, SumsToOne) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0, 50);
    for (int c = 0; c < 200; ++c) {
        Eigen::VectorXd z(5);
        for (auto &v : z) {
            v = normal(rng);
        }
        const Eigen::VectorXd p = softmax(z);
        EXPECT_NEAR(p.sum(), 1.0, 1e-9);
        EXPECT_GE(p.minCoeff(), 0.0);
    }
}

TEST(Dataset, SyntheticShapeAndBalance) {
    const auto &d = data();
    EXPECT_EQ(d.train.size(), 89u);
    EXPECT_EQ(d.test.size(), 88u);
    EXPECT_EQ(d.train.features.cols(), 512);
    const auto ones = std::count(d.test.labels.begin(), d.test.labels.end(), 1u);
    EXPECT_EQ(ones, 44);
    // Constant prediction scores exactly the chance floor on a balanced set.
    EXPECT_EQ(static_cast<double>(88 - ones) / 88.0, 0.5);
}

TEST(Dataset, SyntheticIsSeeded) {
    SyntheticSpec s;
    s.seed = 7;
    const auto again = make_synthetic_dataset(s);
    EXPECT_EQ(again.train.features, data().train.features);
    s.seed = 8;
    EXPECT_NE(make_synthetic_dataset(s).train.features, data().train.features);
}

TEST(Dataset, ValidationRules) {
    Dataset d;
    d.classes = 2;
    d.features = Eigen::MatrixXd::Zero(2, 3);
    d.labels = {0, 0};
    EXPECT_EQ(kind_of([&] { validate(d); }), ErrorKind::ShapeMismatch);
    d.labels = {0, 2};
    EXPECT_EQ(kind_of([&] { validate(d); }), ErrorKind::ShapeMismatch);
    d.labels = {0};
    EXPECT_EQ(kind_of([&] { validate(d); }), ErrorKind::ShapeMismatch);
}

TEST(Model, OutputsAreProbabilities) {
    for (const auto &spec : {classical(5, 8), hybrid(3, 2)}) {
        const Model m = Model::build(spec, 11);
        for (Eigen::Index i = 0; i < 5; ++i) {
            const Eigen::VectorXd p = m.probabilities(data().test.features.row(i).transpose());
            EXPECT_NEAR(p.sum(), 1.0, 1e-9);
        }
        const double acc = m.accuracy(data().test);
        EXPECT_GE(acc, 0.0);
        EXPECT_LE(acc, 1.0);
    }
    const Model m = Model::build(classical(5, 8), 0);
    EXPECT_EQ(kind_of([&] { (void)m.logits(Eigen::VectorXd::Zero(3)); }), ErrorKind::ShapeMismatch);
}

TEST(Gradient, ClassicalMatchesFiniteDifferences) {
    EXPECT_LT(max_relative_gradient_error(classical(5, 8), QuantumGradient::ParameterShift, 7),
              1e-4);
}

TEST(Gradient, HybridMatchesFiniteDifferences) {
    EXPECT_LT(max_relative_gradient_error(hybrid(3, 2), QuantumGradient::ParameterShift, 5),
              1e-4);
    EXPECT_LT(max_relative_gradient_error(hybrid(3, 2), QuantumGradient::Adjoint, 5), 1e-4);
}

TEST(LearningRate, StepSchedule) {
    TrainConfig cfg;
    cfg.alpha0 = 5e-4;
    cfg.alpha_step = 8;
    cfg.alpha_factor = 0.1;
    EXPECT_DOUBLE_EQ(learning_rate(cfg, 0), 5e-4);
    EXPECT_DOUBLE_EQ(learning_rate(cfg, 7), 5e-4);
    EXPECT_DOUBLE_EQ(learning_rate(cfg, 8), 5e-5);
    cfg.alpha_step = 1;
    cfg.alpha_factor = 0.2;
    EXPECT_NEAR(learning_rate(cfg, 3), 5e-4 * 0.008, 1e-18);
}

TEST(TrainConfig, Validation) {
    TrainConfig cfg;
    cfg.alpha_factor = 0.0;
    EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::SpecInvalid);
    cfg = {};
    cfg.alpha_step = 0;
    EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::SpecInvalid);
    cfg = {};
    cfg.batch_size = 0;
    EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::SpecInvalid);
}

TEST(Train, ClassicalSeparableData) {
    Model m = Model::build(classical(5, 8), 1);
    TrainConfig cfg;
    cfg.seed = 3;
    const auto h = train(m, data().train, data().test, cfg);
    ASSERT_EQ(h.size(), 10u);
    RecordProperty("test_accuracy", std::to_string(h.back().test_accuracy));
    EXPECT_GE(h.back().test_accuracy, 0.95);
    EXPECT_LT(h.back().train_loss, h.front().train_loss);
}

TEST(Train, HybridSeparableData) {
    Model m = Model::build(hybrid(4, 2), 1);
    TrainConfig cfg;
    cfg.seed = 3;
    const auto h = train(m, data().train, data().test, cfg);
    ASSERT_EQ(h.size(), 10u);
    RecordProperty("test_accuracy", std::to_string(h.back().test_accuracy));
    EXPECT_GE(h.back().test_accuracy, 0.90);
}

TEST(Train, ZeroEpochsIsNoOp) {
    Model m = Model::build(classical(5, 8), 1);
    const Eigen::VectorXd before = m.parameters();
    TrainConfig cfg;
    cfg.epochs = 0;
    EXPECT_TRUE(train(m, data().train, data().test, cfg).empty());
    EXPECT_EQ(m.parameters(), before);
}

TEST(Train, Deterministic) {
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.seed = 9;
    Model a = Model::build(hybrid(3, 2), 4);
    Model b = Model::build(hybrid(3, 2), 4);
    const auto ha = train(a, data().train, data().test, cfg);
    const auto hb = train(b, data().train, data().test, cfg);
    ASSERT_EQ(ha.size(), hb.size());
    for (std::size_t i = 0; i < ha.size(); ++i) {
        EXPECT_EQ(ha[i].train_loss, hb[i].train_loss);
        EXPECT_EQ(ha[i].test_accuracy, hb[i].test_accuracy);
    }
    EXPECT_EQ(a.parameters(), b.parameters());
}

TEST(Train, NonFiniteInputAborts) {
    Dataset bad = data().train;
    bad.features(0, 0) = INFINITY;
    Model m = Model::build(classical(3, 3), 0);
    TrainConfig cfg;
    cfg.epochs = 1;
    EXPECT_EQ(kind_of([&] { train(m, bad, data().test, cfg); }), ErrorKind::NonFiniteLoss);
}

TEST(Io, DatasetCsvRoundTrip) {
    const auto path = temp_path("data.csv");
    write_dataset_csv(data().test, path);
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header.substr(0, 9), "f0,f1,f2,");
    EXPECT_EQ(header.substr(header.size() - 10), "f511,label");
    const Dataset back = read_dataset_csv(path, 2);
    EXPECT_EQ(back.features, data().test.features);
    EXPECT_EQ(back.labels, data().test.labels);
    std::filesystem::remove(path);
}

TEST(Io, MalformedCsv) {
    const auto path = temp_path("bad.csv");
    {
        std::ofstream os(path);
        os << "f0,f1,label\n1.0,abc,0\n";
    }
    EXPECT_EQ(kind_of([&] { read_dataset_csv(path, 2); }), ErrorKind::IoError);
    EXPECT_EQ(kind_of([] { read_dataset_csv("/nonexistent/x.csv", 2); }), ErrorKind::IoError);
    std::filesystem::remove(path);
}

TEST(Io, CheckpointRoundTrip) {
    for (const auto &spec : {classical(5, 8), hybrid(4, 3)}) {
        const Model m = Model::build(spec, 21);
        const auto path = temp_path("ckpt.txt");
        save_checkpoint(m, path);
        const Model back = load_checkpoint(path);
        EXPECT_EQ(back.parameters(), m.parameters());
        EXPECT_EQ(back.spec().variant, spec.variant);
        EXPECT_EQ(back.blocks().size(), m.blocks().size());
        std::filesystem::remove(path);
        std::filesystem::remove(path.string() + ".manifest.json");
    }
}

TEST(Io, TruncatedCheckpoint) {
    const Model m = Model::build(hybrid(2, 1), 0);
    const auto path = temp_path("short.txt");
    save_checkpoint(m, path);
    {
        std::ofstream os(path);
        os << "0.5\n";
    }
    EXPECT_EQ(kind_of([&] { load_checkpoint(path); }), ErrorKind::IoError);
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".manifest.json");
}

TEST(HpoSpace, KnownGoodHybridConfigIsAFineGridPoint) {
    const SearchSpace s = model_search_space(ModelVariant::Hybrid, 3);
    EXPECT_EQ(s.dim(), 5u);
    const SearchSpace fine({{"n", 4, 16, 13, AxisKind::Integer},
                            {"q", 1, 5, 5, AxisKind::Integer},
                            {"alpha0", 1e-4, 1e-3, 19, AxisKind::Continuous},
                            {"alpha_step", 1, 8, 8, AxisKind::Integer},
                            {"alpha_factor", 0.1, 0.2, 3, AxisKind::Continuous}});
    const HyperParams hp = resolve_hyperparams(fine, fine.resolve({9, 3, 8, 7, 0}),
                                               ModelVariant::Hybrid);
    EXPECT_EQ(hp.n, 13u);
    EXPECT_EQ(hp.q, 4u);
    EXPECT_NEAR(hp.alpha0, 5e-4, 1e-15);
    EXPECT_EQ(hp.alpha_step, 8u);
    EXPECT_EQ(hp.alpha_factor, 0.1);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        EXPECT_EQ(s.axis(i).name, fine.axis(i).name);
        EXPECT_EQ(s.axis(i).lower, fine.axis(i).lower);
        EXPECT_EQ(s.axis(i).upper, fine.axis(i).upper);
    }
}

TEST(HpoSpace, ClassicalAxes) {
    const SearchSpace s = model_search_space(ModelVariant::Classical, 3);
    EXPECT_EQ(s.axis(1).name, "nq");
    EXPECT_EQ(s.grid(1)[2], 80.0);
    const HyperParams hp = resolve_hyperparams(s, s.resolve({0, 1, 2, 0, 1}),
                                               ModelVariant::Classical);
    EXPECT_EQ(hp.n, 4u);
    EXPECT_EQ(hp.m, 42u);
    EXPECT_EQ(hp.alpha0, 1e-3);
}

TEST(AccuracyObjective, ScoresInUnitIntervalAndWrapsErrors) {
    ModelObjectiveSetup setup;
    setup.variant = ModelVariant::Classical;
    setup.data = data();
    setup.train.epochs = 2;
    const SearchSpace s = model_search_space(ModelVariant::Classical, 3);
    const Objective f = make_accuracy_objective(s, setup);
    const double acc = f(s.resolve({0, 0, 2, 0, 0}));
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 1.0);

    const SearchSpace missing({{"n", 4, 6, 3, AxisKind::Integer}});
    const Objective g = make_accuracy_objective(missing, setup);
    EXPECT_EQ(kind_of([&] { g(missing.resolve({0})); }), ErrorKind::ObjectiveFailure);
}
