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

#include "tthpo/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

void check_domain(std::span<const double> x, Bounds b, std::string_view fn) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= b.lower && x[i] <= b.upper)) {
            fail(ErrorKind::DomainViolation, std::string(fn) + ": x[" + std::to_string(i) +
                                                 "] = " + std::to_string(x[i]) +
                                                 " outside domain");
        }
    }
}

} // namespace

std::string_view to_string(BenchmarkKind kind) noexcept {
    switch (kind) {
    case BenchmarkKind::Schwefel:
        return "schwefel";
    case BenchmarkKind::FletcherPowell:
        return "fletcher_powell";
    case BenchmarkKind::Vincent:
        return "vincent";
    }
    return "unknown";
}

Bounds benchmark_bounds(BenchmarkKind kind) noexcept {
    switch (kind) {
    case BenchmarkKind::Schwefel:
        return {-500.0, 500.0};
    case BenchmarkKind::FletcherPowell:
        return {-std::numbers::pi, std::numbers::pi};
    case BenchmarkKind::Vincent:
        return {0.25, 10.0};
    }
    return {0.0, 1.0};
}

FletcherPowellInstance FletcherPowellInstance::generate(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) {
        fail(ErrorKind::InvalidArgument, "fletcher_powell: dim must be >= 1");
    }
    FletcherPowellInstance inst;
    inst.dim_ = dim;
    inst.seed_ = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-100.0, 100.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    inst.a_.resize(dim * dim);
    inst.b_.resize(dim * dim);
    inst.alpha_.resize(dim);
    for (auto &v : inst.a_) {
        v = coef(rng);
    }
    for (auto &v : inst.b_) {
        v = coef(rng);
    }
    for (auto &v : inst.alpha_) {
        v = angle(rng);
    }
    inst.target_.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            inst.target_[i] += inst.a_[i * dim + j] * std::sin(inst.alpha_[j]) +
                               inst.b_[i * dim + j] * std::cos(inst.alpha_[j]);
        }
    }
    return inst;
}

double schwefel(std::span<const double> x) {
    check_domain(x, benchmark_bounds(BenchmarkKind::Schwefel), "schwefel");
    double s = 0.0;
    for (double xi : x) {
        s -= xi * std::sin(std::sqrt(std::abs(xi)));
    }
    return s;
}

double fletcher_powell(std::span<const double> x, const FletcherPowellInstance &inst) {
    const std::size_t d = inst.dim();
    if (x.size() != d) {
        fail(ErrorKind::ShapeMismatch, "fletcher_powell: dimension mismatch");
    }
    check_domain(x, benchmark_bounds(BenchmarkKind::FletcherPowell), "fletcher_powell");
    std::vector<double> s(d);
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; ++j) {
        s[j] = std::sin(x[j]);
        c[j] = std::cos(x[j]);
    }
    const auto a = inst.a();
    const auto b = inst.b();
    double f = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double bi = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            bi += a[i * d + j] * s[j] + b[i * d + j] * c[j];
        }
        const double diff = inst.target()[i] - bi;
        f += diff * diff;
    }
    return f;
}

FletcherPowellTable::FletcherPowellTable(const FletcherPowellInstance &inst,
                                         const SearchSpace &space)
    : dim_(inst.dim()), target_(inst.target().begin(), inst.target().end()) {
    if (space.dim() != dim_) {
        fail(ErrorKind::ShapeMismatch, "fletcher_powell table: dimension mismatch");
    }
    const auto bounds = benchmark_bounds(BenchmarkKind::FletcherPowell);
    for (std::size_t j = 0; j < dim_; ++j) {
        stride_ = std::max(stride_, space.points(j));
        check_domain(space.grid(j), bounds, "fletcher_powell");
    }
    terms_.assign(dim_ * dim_ * stride_, 0.0);
    const auto a = inst.a();
    const auto b = inst.b();
    for (std::size_t j = 0; j < dim_; ++j) {
        const auto &g = space.grid(j);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double s = std::sin(g[k]);
            const double c = std::cos(g[k]);
            for (std::size_t i = 0; i < dim_; ++i) {
                terms_[(i * dim_ + j) * stride_ + k] = a[i * dim_ + j] * s + b[i * dim_ + j] * c;
            }
        }
    }
}

double FletcherPowellTable::operator()(const GridIndex &indices) const {
    double f = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        const double *row = terms_.data() + i * dim_ * stride_;
        double bi = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            bi += row[j * stride_ + indices[j]];
        }
        const double diff = target_[i] - bi;
        f += diff * diff;
    }
    return f;
}

double vincent(std::span<const double> x) {
    check_domain(x, benchmark_bounds(BenchmarkKind::Vincent), "vincent");
    if (x.empty()) {
        fail(ErrorKind::ShapeMismatch, "vincent: empty input");
    }
    double s = 0.0;
    for (double xi : x) {
        s += std::sin(10.0 * std::log(xi));
    }
    return -s / static_cast<double>(x.size());
}

BenchmarkFn BenchmarkFn::make(BenchmarkKind kind, std::size_t dim, std::uint64_t seed) {
    if (dim < 1) {
        fail(ErrorKind::InvalidArgument, "benchmark dim must be >= 1");
    }
    BenchmarkFn fn;
    fn.kind = kind;
    fn.dim = dim;
    fn.domain.assign(dim, benchmark_bounds(kind));
    if (kind == BenchmarkKind::FletcherPowell) {
        fn.instance = FletcherPowellInstance::generate(dim, seed);
    }
    return fn;
}

double BenchmarkFn::operator()(std::span<const double> x) const {
    if (x.size() != dim) {
        fail(ErrorKind::ShapeMismatch, std::string(to_string(kind)) + ": expected " +
                                           std::to_string(dim) + " coordinates");
    }
    switch (kind) {
    case BenchmarkKind::Schwefel:
        return schwefel(x);
    case BenchmarkKind::FletcherPowell:
        return fletcher_powell(x, *instance);
    case BenchmarkKind::Vincent:
        return vincent(x);
    }
    return 0.0;
}

SearchSpace BenchmarkFn::grid(std::size_t points) const {
    std::vector<AxisSpec> axes;
    axes.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        axes.push_back({"x" + std::to_string(i), domain[i].lower, domain[i].upper, points,
                        AxisKind::Continuous});
    }
    return SearchSpace(std::move(axes));
}

} // namespace tthpo
