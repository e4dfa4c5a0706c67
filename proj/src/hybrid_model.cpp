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

#include "tthpo/hybrid_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatMap = Eigen::Map<const RowMajor>;
using MatMap = Eigen::Map<RowMajor>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;

ConstMatMap mat(const Eigen::VectorXd &flat, const ParamBlock &b) {
    return {flat.data() + b.offset, static_cast<Eigen::Index>(b.rows),
            static_cast<Eigen::Index>(b.cols)};
}
MatMap mat(Eigen::VectorXd &flat, const ParamBlock &b) {
    return {flat.data() + b.offset, static_cast<Eigen::Index>(b.rows),
            static_cast<Eigen::Index>(b.cols)};
}
ConstVecMap vec(const Eigen::VectorXd &flat, const ParamBlock &b) {
    return {flat.data() + b.offset, static_cast<Eigen::Index>(b.size())};
}
VecMap vec(Eigen::VectorXd &flat, const ParamBlock &b) {
    return {flat.data() + b.offset, static_cast<Eigen::Index>(b.size())};
}

std::string axis_name(RotationAxis a) {
    switch (a) {
    case RotationAxis::X:
        return "x";
    case RotationAxis::Y:
        return "y";
    case RotationAxis::Z:
        return "z";
    }
    return "z";
}

RotationAxis parse_axis(const std::string &s) {
    if (s == "x") {
        return RotationAxis::X;
    }
    if (s == "y") {
        return RotationAxis::Y;
    }
    if (s == "z") {
        return RotationAxis::Z;
    }
    fail(ErrorKind::IoError, "unknown rotation axis '" + s + "'");
}

// Forward activations kept for backprop.
struct Activations {
    Eigen::VectorXd a1;
    Eigen::VectorXd h1;
    Eigen::VectorXd h2;
    Eigen::VectorXd logits;
};

} // namespace

std::string_view to_string(ModelVariant v) noexcept {
    return v == ModelVariant::Classical ? "classical" : "hybrid";
}

void validate(const ModelSpec &spec) {
    if (spec.input_dim < 1 || spec.n < 1 || spec.classes < 2) {
        fail(ErrorKind::SpecInvalid, "model needs input_dim >= 1, n >= 1, classes >= 2");
    }
    if (spec.variant == ModelVariant::Hybrid) {
        validate(QuantumLayerSpec{spec.n, spec.q, spec.axis_schedule});
    } else if (spec.m < 1) {
        fail(ErrorKind::SpecInvalid, "classical model needs m >= 1");
    }
}

std::size_t parameter_count(const ModelSpec &spec) {
    const std::size_t first = (spec.input_dim + 1) * spec.n;
    if (spec.variant == ModelVariant::Hybrid) {
        return first + spec.n * spec.q + (spec.n + 1) * spec.classes;
    }
    return first + (spec.n + 1) * spec.m + (spec.m + 1) * spec.classes;
}

std::vector<ParamBlock> parameter_layout(const ModelSpec &spec) {
    validate(spec);
    std::vector<ParamBlock> blocks;
    std::size_t offset = 0;
    auto add = [&](std::string name, std::size_t rows, std::size_t cols) {
        blocks.push_back({std::move(name), rows, cols, offset});
        offset += rows * cols;
    };
    add("dense1.weight", spec.n, spec.input_dim);
    add("dense1.bias", spec.n, 1);
    std::size_t last_in = spec.n;
    if (spec.variant == ModelVariant::Hybrid) {
        add("quantum.theta", spec.q, spec.n);
    } else {
        add("dense2.weight", spec.m, spec.n);
        add("dense2.bias", spec.m, 1);
        last_in = spec.m;
    }
    add("out.weight", spec.classes, last_in);
    add("out.bias", spec.classes, 1);
    return blocks;
}

void validate(const Dataset &data) {
    if (static_cast<std::size_t>(data.features.rows()) != data.labels.size()) {
        fail(ErrorKind::ShapeMismatch, "dataset feature rows and labels differ");
    }
    std::vector<bool> seen(data.classes, false);
    for (auto l : data.labels) {
        if (l >= data.classes) {
            fail(ErrorKind::ShapeMismatch, "label " + std::to_string(l) + " >= classes");
        }
        seen[l] = true;
    }
    if (data.classes == 2 && !data.labels.empty() && !(seen[0] && seen[1])) {
        fail(ErrorKind::ShapeMismatch, "two-class dataset must contain both classes");
    }
}

Eigen::VectorXd softmax(const Eigen::VectorXd &logits) {
    const double mx = logits.maxCoeff();
    Eigen::VectorXd e = (logits.array() - mx).exp();
    return e / e.sum();
}

double cross_entropy(std::span<const double> probs, std::size_t label, LossDiagnostics *diag) {
    if (label >= probs.size()) {
        fail(ErrorKind::DomainViolation, "label " + std::to_string(label) + " out of range");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            fail(ErrorKind::DomainViolation, "probability outside [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        fail(ErrorKind::DomainViolation, "probabilities sum to " + std::to_string(sum));
    }
    double p = probs[label];
    if (p < kProbabilityFloor) {
        p = kProbabilityFloor;
        if (diag) {
            ++diag->clamped;
        }
    }
    return -std::log(p);
}

Model::Model(ModelSpec spec, std::vector<ParamBlock> blocks, Eigen::VectorXd params)
    : spec_(std::move(spec)), blocks_(std::move(blocks)), params_(std::move(params)) {}

Model Model::build(const ModelSpec &spec, std::uint64_t seed) {
    auto blocks = parameter_layout(spec);
    Eigen::VectorXd params(static_cast<Eigen::Index>(tthpo::parameter_count(spec)));
    std::mt19937_64 rng(seed);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto &blk = blocks[b];
        double bound = 0.0;
        if (blk.name == "quantum.theta") {
            bound = std::numbers::pi;
        } else {
            // Biases share the fan-in of the weight block just before them.
            const auto &w = blk.name.ends_with(".bias") ? blocks[b - 1] : blk;
            bound = 1.0 / std::sqrt(static_cast<double>(w.cols));
        }
        std::uniform_real_distribution<double> u(-bound, bound);
        for (std::size_t i = 0; i < blk.size(); ++i) {
            params(static_cast<Eigen::Index>(blk.offset + i)) = u(rng);
        }
    }
    return Model(spec, std::move(blocks), std::move(params));
}

Model Model::from_parameters(const ModelSpec &spec, Eigen::VectorXd params) {
    auto blocks = parameter_layout(spec);
    if (static_cast<std::size_t>(params.size()) != tthpo::parameter_count(spec)) {
        fail(ErrorKind::ShapeMismatch, "parameter vector has " + std::to_string(params.size()) +
                                           " entries, spec needs " +
                                           std::to_string(tthpo::parameter_count(spec)));
    }
    return Model(spec, std::move(blocks), std::move(params));
}

std::size_t Model::variational_count() const noexcept {
    return spec_.variant == ModelVariant::Hybrid ? spec_.n * spec_.q : 0;
}

const ParamBlock &Model::block(std::string_view name) const {
    for (const auto &b : blocks_) {
        if (b.name == name) {
            return b;
        }
    }
    fail(ErrorKind::InvalidArgument, "no parameter block " + std::string(name));
}

QuantumLayerSpec Model::quantum_spec() const {
    return QuantumLayerSpec{spec_.n, spec_.q, spec_.axis_schedule};
}

namespace {

Activations run_forward(const Model &model, const Eigen::VectorXd &x,
                        const QuantumLayerSpec &qspec) {
    const auto &spec = model.spec();
    const auto &p = model.parameters();
    const auto &blocks = model.blocks();
    Activations act;
    act.a1 = mat(p, blocks[0]) * x + vec(p, blocks[1]);
    if (spec.variant == ModelVariant::Hybrid) {
        const auto theta = vec(p, blocks[2]);
        const auto e = forward(qspec, std::span<const double>(act.a1.data(), spec.n),
                               std::span<const double>(theta.data(), spec.n * spec.q));
        act.h2 = Eigen::Map<const Eigen::VectorXd>(e.data(), static_cast<Eigen::Index>(e.size()));
        act.logits = mat(p, blocks[3]) * act.h2 + vec(p, blocks[4]);
    } else {
        act.h1 = act.a1.array().tanh();
        act.h2 = (mat(p, blocks[2]) * act.h1 + vec(p, blocks[3])).array().tanh();
        act.logits = mat(p, blocks[4]) * act.h2 + vec(p, blocks[5]);
    }
    return act;
}

} // namespace

Eigen::VectorXd Model::logits(const Eigen::VectorXd &x) const {
    if (static_cast<std::size_t>(x.size()) != spec_.input_dim) {
        fail(ErrorKind::ShapeMismatch, "input has " + std::to_string(x.size()) + " features");
    }
    return run_forward(*this, x, quantum_spec()).logits;
}

Eigen::VectorXd Model::probabilities(const Eigen::VectorXd &x) const {
    return softmax(logits(x));
}

std::size_t Model::predict(const Eigen::VectorXd &x) const {
    Eigen::Index best = 0;
    logits(x).maxCoeff(&best);
    return static_cast<std::size_t>(best);
}

double Model::accuracy(const Dataset &data) const {
    if (data.size() == 0) {
        return 0.0;
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (predict(data.features.row(static_cast<Eigen::Index>(i)).transpose()) ==
            data.labels[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

double Model::loss(const Dataset &data, std::span<const std::size_t> rows) const {
    double total = 0.0;
    for (auto r : rows) {
        const Eigen::VectorXd probs =
            softmax(logits(data.features.row(static_cast<Eigen::Index>(r)).transpose()));
        total += cross_entropy(std::span<const double>(probs.data(), spec_.classes),
                               data.labels[r]);
    }
    return rows.empty() ? 0.0 : total / static_cast<double>(rows.size());
}

double Model::loss_and_gradient(const Dataset &data, std::span<const std::size_t> rows,
                                Eigen::VectorXd &grad, QuantumGradient method,
                                LossDiagnostics *diag) const {
    grad.setZero(params_.size());
    if (rows.empty()) {
        return 0.0;
    }
    const QuantumLayerSpec qspec = quantum_spec();
    const double scale = 1.0 / static_cast<double>(rows.size());
    const auto &b = blocks_;
    double total = 0.0;

    for (auto r : rows) {
        const Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(r)).transpose();
        const Activations act = run_forward(*this, x, qspec);
        const Eigen::VectorXd probs = softmax(act.logits);
        if (!probs.allFinite()) {
            fail(ErrorKind::NonFiniteLoss,
                 "non-finite logits for sample " + std::to_string(r));
        }
        total += cross_entropy(std::span<const double>(probs.data(), spec_.classes),
                               data.labels[r], diag);

        Eigen::VectorXd dz = probs;
        dz(static_cast<Eigen::Index>(data.labels[r])) -= 1.0;
        dz *= scale;

        Eigen::VectorXd da1;
        if (spec_.variant == ModelVariant::Hybrid) {
            mat(grad, b[3]).noalias() += dz * act.h2.transpose();
            vec(grad, b[4]) += dz;
            const Eigen::VectorXd de = mat(params_, b[3]).transpose() * dz;
            const auto theta = vec(params_, b[2]);
            const LayerVjp v =
                vjp(qspec, std::span<const double>(act.a1.data(), spec_.n),
                    std::span<const double>(theta.data(), spec_.n * spec_.q),
                    std::span<const double>(de.data(), spec_.n), method);
            vec(grad, b[2]) += Eigen::Map<const Eigen::VectorXd>(
                v.d_theta.data(), static_cast<Eigen::Index>(v.d_theta.size()));
            da1 = Eigen::Map<const Eigen::VectorXd>(v.d_x.data(),
                                                    static_cast<Eigen::Index>(v.d_x.size()));
        } else {
            mat(grad, b[4]).noalias() += dz * act.h2.transpose();
            vec(grad, b[5]) += dz;
            const Eigen::VectorXd da2 = (mat(params_, b[4]).transpose() * dz).array() *
                                        (1.0 - act.h2.array().square());
            mat(grad, b[2]).noalias() += da2 * act.h1.transpose();
            vec(grad, b[3]) += da2;
            da1 = (mat(params_, b[2]).transpose() * da2).array() *
                  (1.0 - act.h1.array().square());
        }
        mat(grad, b[0]).noalias() += da1 * x.transpose();
        vec(grad, b[1]) += da1;
    }
    return total * scale;
}

void validate(const TrainConfig &cfg) {
    if (!(cfg.alpha0 > 0.0)) {
        fail(ErrorKind::SpecInvalid, "alpha0 must be > 0");
    }
    if (cfg.alpha_step < 1) {
        fail(ErrorKind::SpecInvalid, "alpha_step must be >= 1");
    }
    if (!(cfg.alpha_factor > 0.0 && cfg.alpha_factor <= 1.0)) {
        fail(ErrorKind::SpecInvalid, "alpha_factor must be in (0, 1]");
    }
    if (cfg.batch_size < 1) {
        fail(ErrorKind::SpecInvalid, "batch_size must be >= 1");
    }
    if (!(cfg.weight_decay >= 0.0) || !(cfg.grad_clip > 0.0)) {
        fail(ErrorKind::SpecInvalid, "weight_decay must be >= 0 and grad_clip > 0");
    }
}

double learning_rate(const TrainConfig &cfg, std::size_t epoch) {
    return cfg.alpha0 *
           std::pow(cfg.alpha_factor, static_cast<double>(epoch / cfg.alpha_step));
}

std::vector<EpochRecord> train(Model &model, const Dataset &train_set, const Dataset &test_set,
                               const TrainConfig &cfg) {
    validate(cfg);
    validate(train_set);
    validate(test_set);
    std::vector<EpochRecord> history;
    if (cfg.epochs == 0) {
        return history;
    }
    if (train_set.size() == 0) {
        fail(ErrorKind::InvalidArgument, "training set is empty");
    }

    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;

    Eigen::VectorXd &w = model.parameters();
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(w.size());
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(w.size());
    Eigen::VectorXd grad;
    std::size_t step = 0;

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        const double lr = learning_rate(cfg, epoch);
        double epoch_loss = 0.0;

        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t len = std::min(cfg.batch_size, order.size() - start);
            const std::span<const std::size_t> batch(order.data() + start, len);
            const double batch_loss =
                model.loss_and_gradient(train_set, batch, grad, cfg.quantum_gradient);
            if (!std::isfinite(batch_loss) || !grad.allFinite()) {
                fail(ErrorKind::NonFiniteLoss,
                     "non-finite loss/gradient at epoch " + std::to_string(epoch) +
                         ", batch starting at " + std::to_string(start) + ", lr " +
                         std::to_string(lr));
            }
            epoch_loss += batch_loss * static_cast<double>(len);

            const double norm = grad.norm();
            if (norm > cfg.grad_clip) {
                grad *= cfg.grad_clip / norm;
            }
            grad += cfg.weight_decay * w;

            ++step;
            m1 = kBeta1 * m1 + (1.0 - kBeta1) * grad;
            m2 = kBeta2 * m2 + (1.0 - kBeta2) * grad.cwiseAbs2();
            const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
            w.array() -= lr * (m1.array() / c1) / ((m2.array() / c2).sqrt() + kEps);
        }
        history.push_back({epoch, epoch_loss / static_cast<double>(order.size()),
                           model.accuracy(test_set)});
    }
    return history;
}

SplitDataset make_synthetic_dataset(const SyntheticSpec &spec) {
    if (spec.raw_dim < 1 || spec.input_dim < 1 || spec.classes < 2 || spec.train_size < 1) {
        fail(ErrorKind::SpecInvalid, "synthetic dataset spec invalid");
    }
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto raw = static_cast<Eigen::Index>(spec.raw_dim);

    // Class means on a sphere of radius separation / 2; two classes sit
    // antipodal so their distance is exactly `separation`.
    std::vector<Eigen::VectorXd> means;
    Eigen::VectorXd dir(raw);
    for (std::size_t c = 0; c < spec.classes; ++c) {
        if (c != 1 || spec.classes != 2) {
            for (Eigen::Index i = 0; i < raw; ++i) {
                dir(i) = normal(rng);
            }
            dir.normalize();
        } else {
            dir = -dir;
        }
        means.push_back(0.5 * spec.separation * dir);
    }
    for (Eigen::Index i = 0; i < raw; ++i) {
        dir(i) = normal(rng);
    }
    dir.normalize();
    for (auto &mu : means) {
        mu += spec.offset * dir;
    }

    Eigen::MatrixXd lift(static_cast<Eigen::Index>(spec.input_dim), raw);
    const double s = 1.0 / std::sqrt(static_cast<double>(spec.raw_dim));
    for (Eigen::Index i = 0; i < lift.rows(); ++i) {
        for (Eigen::Index j = 0; j < raw; ++j) {
            lift(i, j) = s * normal(rng);
        }
    }

    auto draw = [&](std::size_t count) {
        Dataset d;
        d.classes = spec.classes;
        d.features.resize(static_cast<Eigen::Index>(count),
                          static_cast<Eigen::Index>(spec.input_dim));
        d.labels.resize(count);
        Eigen::VectorXd z(raw);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t label = i % spec.classes;
            for (Eigen::Index j = 0; j < raw; ++j) {
                z(j) = means[label](j) + normal(rng);
            }
            d.features.row(static_cast<Eigen::Index>(i)) = (lift * z).transpose();
            d.labels[i] = label;
        }
        return d;
    };
    SplitDataset out;
    out.train = draw(spec.train_size);
    out.test = draw(spec.test_size);
    return out;
}

void write_dataset_csv(const Dataset &data, const std::filesystem::path &path) {
    validate(data);
    std::ofstream os(path);
    if (!os) {
        fail(ErrorKind::IoError, "cannot write " + path.string());
    }
    const auto cols = data.features.cols();
    for (Eigen::Index j = 0; j < cols; ++j) {
        os << 'f' << j << ',';
    }
    os << "label\n";
    char buf[32];
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            auto res = std::to_chars(buf, buf + sizeof buf,
                                     data.features(static_cast<Eigen::Index>(i), j));
            os.write(buf, res.ptr - buf);
            os << ',';
        }
        os << data.labels[i] << '\n';
    }
}

Dataset read_dataset_csv(const std::filesystem::path &path, std::size_t classes) {
    std::ifstream is(path);
    if (!is) {
        fail(ErrorKind::IoError, "cannot read " + path.string());
    }
    std::string line;
    std::getline(is, line);
    const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 2 || !line.ends_with("label")) {
        fail(ErrorKind::IoError, path.string() + ": header must be f0..fN,label");
    }
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> labels;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        row.reserve(columns - 1);
        const char *p = line.data();
        const char *end = line.data() + line.size();
        for (std::size_t c = 0; c < columns; ++c) {
            double v = 0.0;
            auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc{}) {
                fail(ErrorKind::IoError,
                     path.string() + ":" + std::to_string(line_no) + ": bad number");
            }
            if (c + 1 < columns) {
                row.push_back(v);
                if (res.ptr == end || *res.ptr != ',') {
                    fail(ErrorKind::IoError,
                         path.string() + ":" + std::to_string(line_no) + ": too few columns");
                }
                p = res.ptr + 1;
            } else {
                if (v < 0 || v != std::floor(v)) {
                    fail(ErrorKind::IoError,
                         path.string() + ":" + std::to_string(line_no) + ": bad label");
                }
                labels.push_back(static_cast<std::size_t>(v));
            }
        }
        rows.push_back(std::move(row));
    }
    Dataset d;
    d.classes = classes;
    d.features.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(columns - 1));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j + 1 < columns; ++j) {
            d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    d.labels = std::move(labels);
    validate(d);
    return d;
}

void save_checkpoint(const Model &model, const std::filesystem::path &path) {
    const auto &spec = model.spec();
    nlohmann::json manifest;
    manifest["variant"] = std::string(to_string(spec.variant));
    manifest["input_dim"] = spec.input_dim;
    manifest["n"] = spec.n;
    manifest["q"] = spec.q;
    manifest["m"] = spec.m;
    manifest["classes"] = spec.classes;
    auto axes = nlohmann::json::array();
    for (auto a : spec.axis_schedule) {
        axes.push_back(axis_name(a));
    }
    manifest["axis_schedule"] = axes;
    manifest["layout"] = "row-major";
    auto blocks = nlohmann::json::array();
    for (const auto &b : model.blocks()) {
        blocks.push_back({{"name", b.name},
                          {"shape", {b.rows, b.cols}},
                          {"offset", b.offset},
                          {"count", b.size()}});
    }
    manifest["blocks"] = blocks;
    manifest["total"] = model.parameter_count();

    std::ofstream values(path);
    std::ofstream mf(path.string() + ".manifest.json");
    if (!values || !mf) {
        fail(ErrorKind::IoError, "cannot write checkpoint " + path.string());
    }
    char buf[32];
    for (Eigen::Index i = 0; i < model.parameters().size(); ++i) {
        auto res = std::to_chars(buf, buf + sizeof buf, model.parameters()(i));
        values.write(buf, res.ptr - buf);
        values << '\n';
    }
    mf << manifest.dump(2) << '\n';
}

Model load_checkpoint(const std::filesystem::path &path) {
    std::ifstream mf(path.string() + ".manifest.json");
    std::ifstream values(path);
    if (!mf || !values) {
        fail(ErrorKind::IoError, "cannot read checkpoint " + path.string());
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(mf);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::IoError, std::string("bad manifest: ") + e.what());
    }
    ModelSpec spec;
    spec.variant =
        manifest.at("variant") == "classical" ? ModelVariant::Classical : ModelVariant::Hybrid;
    spec.input_dim = manifest.at("input_dim");
    spec.n = manifest.at("n");
    spec.q = manifest.at("q");
    spec.m = manifest.at("m");
    spec.classes = manifest.at("classes");
    for (const auto &a : manifest.at("axis_schedule")) {
        spec.axis_schedule.push_back(parse_axis(a.get<std::string>()));
    }
    const auto layout = parameter_layout(spec);
    const auto &jb = manifest.at("blocks");
    if (jb.size() != layout.size()) {
        fail(ErrorKind::IoError, "manifest block list does not match the model spec");
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (jb[i].at("name") != layout[i].name || jb[i].at("offset") != layout[i].offset ||
            jb[i].at("count") != layout[i].size()) {
            fail(ErrorKind::IoError, "manifest block '" + layout[i].name + "' mismatch");
        }
    }
    Eigen::VectorXd params(static_cast<Eigen::Index>(parameter_count(spec)));
    std::string line;
    for (Eigen::Index i = 0; i < params.size(); ++i) {
        if (!std::getline(values, line)) {
            fail(ErrorKind::IoError, "checkpoint has too few values");
        }
        auto res = std::from_chars(line.data(), line.data() + line.size(), params(i));
        if (res.ec != std::errc{}) {
            fail(ErrorKind::IoError, "checkpoint value " + std::to_string(i) + " unreadable");
        }
    }
    return Model::from_parameters(spec, std::move(params));
}

SearchSpace model_search_space(ModelVariant variant, std::size_t points) {
    std::vector<AxisSpec> axes;
    axes.push_back({"n", 4, 16, points, AxisKind::Integer});
    if (variant == ModelVariant::Hybrid) {
        axes.push_back({"q", 1, 5, points, AxisKind::Integer});
    } else {
        axes.push_back({"nq", 4, 80, points, AxisKind::Integer});
    }
    axes.push_back({"alpha0", 1e-4, 1e-3, points, AxisKind::Continuous});
    axes.push_back({"alpha_step", 1, 8, points, AxisKind::Integer});
    axes.push_back({"alpha_factor", 0.1, 0.2, points, AxisKind::Continuous});
    return SearchSpace(std::move(axes));
}

HyperParams resolve_hyperparams(const SearchSpace &space, const GridPoint &point,
                                ModelVariant variant) {
    auto find = [&](std::string_view name) -> double {
        for (std::size_t i = 0; i < space.dim(); ++i) {
            if (space.axis(i).name == name) {
                return point.values.at(i);
            }
        }
        fail(ErrorKind::ConfigInvalid, "search space lacks axis '" + std::string(name) + "'");
    };
    auto as_count = [](double v, std::string_view name) {
        if (!(v >= 1.0) || v != std::floor(v)) {
            fail(ErrorKind::ConfigInvalid,
                 "axis '" + std::string(name) + "' must take whole values >= 1");
        }
        return static_cast<std::size_t>(v);
    };
    HyperParams hp;
    hp.n = as_count(find("n"), "n");
    if (variant == ModelVariant::Hybrid) {
        hp.q = as_count(find("q"), "q");
    } else {
        hp.m = as_count(find("nq"), "nq");
    }
    hp.alpha0 = find("alpha0");
    hp.alpha_step = as_count(find("alpha_step"), "alpha_step");
    hp.alpha_factor = find("alpha_factor");
    return hp;
}

double train_and_score(const HyperParams &hp, const ModelObjectiveSetup &setup) {
    ModelSpec spec;
    spec.variant = setup.variant;
    spec.input_dim = static_cast<std::size_t>(setup.data.train.features.cols());
    spec.n = hp.n;
    spec.q = hp.q;
    spec.m = hp.m;
    spec.classes = setup.data.train.classes;
    Model model = Model::build(spec, setup.model_seed);
    TrainConfig cfg = setup.train;
    cfg.alpha0 = hp.alpha0;
    cfg.alpha_step = hp.alpha_step;
    cfg.alpha_factor = hp.alpha_factor;
    const auto history = train(model, setup.data.train, setup.data.test, cfg);
    return history.empty() ? model.accuracy(setup.data.test) : history.back().test_accuracy;
}

Objective make_accuracy_objective(const SearchSpace &space, ModelObjectiveSetup setup) {
    return [space, setup = std::move(setup)](const GridPoint &point) {
        try {
            return train_and_score(resolve_hyperparams(space, point, setup.variant), setup);
        } catch (const Error &e) {
            fail(ErrorKind::ObjectiveFailure,
                 std::string("model trial failed: ") + std::string(to_string(e.kind())) +
                     ": " + e.what());
        }
    };
}

} // namespace tthpo
