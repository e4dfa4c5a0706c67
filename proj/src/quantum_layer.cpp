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

#include "tthpo/quantum_layer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tthpo/error.hpp"

namespace tthpo {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kShift = std::numbers::pi / 2.0;

void check_shapes(const QuantumLayerSpec &spec, std::span<const double> x,
                  std::span<const double> theta) {
    validate(spec);
    if (x.size() != spec.qubits) {
        fail(ErrorKind::ShapeMismatch, "quantum layer expects " + std::to_string(spec.qubits) +
                                           " inputs, got " + std::to_string(x.size()));
    }
    if (theta.size() != spec.parameter_count()) {
        fail(ErrorKind::ShapeMismatch,
             "quantum layer expects " + std::to_string(spec.parameter_count()) +
                 " parameters, got " + std::to_string(theta.size()));
    }
}

RotationAxis axis_of(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return RotationAxis::X;
    case GateKind::RY:
        return RotationAxis::Y;
    default:
        return RotationAxis::Z;
    }
}

std::vector<double> expectations(const StateVector &s) {
    std::vector<double> out(s.qubits());
    for (std::size_t w = 0; w < s.qubits(); ++w) {
        out[w] = s.expectation_x(w);
    }
    return out;
}

} // namespace

Gate Gate::rot(RotationAxis axis, std::size_t wire, double t) {
    switch (axis) {
    case RotationAxis::X:
        return rx(wire, t);
    case RotationAxis::Y:
        return ry(wire, t);
    case RotationAxis::Z:
        return rz(wire, t);
    }
    return rz(wire, t);
}

StateVector::StateVector(std::size_t qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        fail(ErrorKind::SpecInvalid,
             "qubit count " + std::to_string(qubits) + " outside [1, 16]");
    }
    amps_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::check_wire(std::size_t wire) const {
    if (wire >= qubits_) {
        fail(ErrorKind::WireOutOfRange,
             "wire " + std::to_string(wire) + " on a " + std::to_string(qubits_) + "-qubit state");
    }
}

void StateVector::apply_single(std::size_t wire, Complex u00, Complex u01, Complex u10,
                               Complex u11) {
    const std::size_t mask = std::size_t{1} << (qubits_ - 1 - wire);
    const std::size_t dim = amps_.size();
    for (std::size_t i0 = 0; i0 < dim; ++i0) {
        if (i0 & mask) {
            continue;
        }
        const std::size_t i1 = i0 | mask;
        const Complex a0 = amps_[i0];
        const Complex a1 = amps_[i1];
        amps_[i0] = u00 * a0 + u01 * a1;
        amps_[i1] = u10 * a0 + u11 * a1;
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cmask = std::size_t{1} << (qubits_ - 1 - control);
    const std::size_t tmask = std::size_t{1} << (qubits_ - 1 - target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_pauli(RotationAxis axis, std::size_t wire) {
    check_wire(wire);
    switch (axis) {
    case RotationAxis::X:
        apply_single(wire, 0.0, 1.0, 1.0, 0.0);
        break;
    case RotationAxis::Y:
        apply_single(wire, 0.0, -kI, kI, 0.0);
        break;
    case RotationAxis::Z:
        apply_single(wire, 1.0, 0.0, 0.0, -1.0);
        break;
    }
}

void StateVector::apply(const Gate &gate) {
    check_wire(gate.target);
    const double c = std::cos(gate.theta / 2.0);
    const double s = std::sin(gate.theta / 2.0);
    switch (gate.kind) {
    case GateKind::H: {
        const double h = std::numbers::sqrt2 / 2.0;
        apply_single(gate.target, h, h, h, -h);
        break;
    }
    case GateKind::RX:
        apply_single(gate.target, c, -kI * s, -kI * s, c);
        break;
    case GateKind::RY:
        apply_single(gate.target, c, -s, s, c);
        break;
    case GateKind::RZ:
        apply_single(gate.target, Complex{c, -s}, 0.0, 0.0, Complex{c, s});
        break;
    case GateKind::CNOT:
        check_wire(gate.control);
        if (gate.control == gate.target) {
            fail(ErrorKind::WireOutOfRange, "CNOT control equals target");
        }
        apply_cnot(gate.control, gate.target);
        break;
    }
}

void StateVector::apply_adjoint(const Gate &gate) {
    Gate inv = gate;
    inv.theta = -gate.theta;
    apply(inv);
}

double StateVector::expectation_x(std::size_t wire) const {
    check_wire(wire);
    const std::size_t mask = std::size_t{1} << (qubits_ - 1 - wire);
    double e = 0.0;
    for (std::size_t i0 = 0; i0 < amps_.size(); ++i0) {
        if (!(i0 & mask)) {
            e += 2.0 * std::real(std::conj(amps_[i0]) * amps_[i0 | mask]);
        }
    }
    return e;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

Complex StateVector::inner(const StateVector &other) const {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

RotationAxis QuantumLayerSpec::axis_for_layer(std::size_t layer) const {
    if (!axis_schedule.empty()) {
        return axis_schedule[layer % axis_schedule.size()];
    }
    return static_cast<RotationAxis>(layer % 3);
}

void validate(const QuantumLayerSpec &spec) {
    if (spec.qubits < 1 || spec.qubits > spec.max_qubits || spec.max_qubits > kMaxQubits) {
        fail(ErrorKind::SpecInvalid, "quantum layer qubits must be in [1, " +
                                         std::to_string(spec.max_qubits) + "]");
    }
    if (spec.depth < 1) {
        fail(ErrorKind::SpecInvalid, "quantum layer depth must be >= 1");
    }
}

std::vector<CircuitOp> build_circuit(const QuantumLayerSpec &spec, std::span<const double> x,
                                     std::span<const double> theta) {
    check_shapes(spec, x, theta);
    const std::size_t n = spec.qubits;
    std::vector<CircuitOp> ops;
    ops.reserve(2 * n + spec.depth * 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        ops.push_back({Gate::h(i)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        ops.push_back({Gate::ry(i, x[i]), ParamSource::Input, i});
    }
    for (std::size_t l = 0; l < spec.depth; ++l) {
        if (n > 1) {
            for (std::size_t i = 0; i < n; ++i) {
                ops.push_back({Gate::cnot(i, (i + 1) % n)});
            }
        }
        const RotationAxis axis = spec.axis_for_layer(l);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t p = l * n + i;
            ops.push_back({Gate::rot(axis, i, theta[p]), ParamSource::Theta, p});
        }
    }
    return ops;
}

StateVector prepare_state(const QuantumLayerSpec &spec, std::span<const double> x,
                          std::span<const double> theta) {
    StateVector s(spec.qubits);
    for (const auto &op : build_circuit(spec, x, theta)) {
        s.apply(op.gate);
    }
    return s;
}

std::vector<double> forward(const QuantumLayerSpec &spec, std::span<const double> x,
                            std::span<const double> theta) {
    return expectations(prepare_state(spec, x, theta));
}

LayerJacobian gradient(const QuantumLayerSpec &spec, std::span<const double> x,
                       std::span<const double> theta) {
    check_shapes(spec, x, theta);
    const auto n = static_cast<Eigen::Index>(spec.qubits);
    LayerJacobian jac{Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(theta.size())),
                      Eigen::MatrixXd::Zero(n, n)};

    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ts(theta.begin(), theta.end());
    auto shifted_column = [&](double &param) {
        const double saved = param;
        param = saved + kShift;
        const auto plus = forward(spec, xs, ts);
        param = saved - kShift;
        const auto minus = forward(spec, xs, ts);
        param = saved;
        Eigen::VectorXd col(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            col(i) = 0.5 * (plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)]);
        }
        return col;
    };
    for (std::size_t p = 0; p < ts.size(); ++p) {
        jac.d_theta.col(static_cast<Eigen::Index>(p)) = shifted_column(ts[p]);
    }
    for (std::size_t p = 0; p < xs.size(); ++p) {
        jac.d_x.col(static_cast<Eigen::Index>(p)) = shifted_column(xs[p]);
    }
    return jac;
}

LayerVjp vjp(const QuantumLayerSpec &spec, std::span<const double> x,
             std::span<const double> theta, std::span<const double> upstream,
             QuantumGradient method) {
    check_shapes(spec, x, theta);
    if (upstream.size() != spec.qubits) {
        fail(ErrorKind::ShapeMismatch, "vjp upstream length must equal qubit count");
    }
    const std::size_t n = spec.qubits;
    LayerVjp out{std::vector<double>(theta.size(), 0.0), std::vector<double>(n, 0.0)};

    if (method == QuantumGradient::ParameterShift) {
        const LayerJacobian jac = gradient(spec, x, theta);
        const Eigen::Map<const Eigen::VectorXd> w(upstream.data(),
                                                  static_cast<Eigen::Index>(n));
        const Eigen::VectorXd gt = jac.d_theta.transpose() * w;
        const Eigen::VectorXd gx = jac.d_x.transpose() * w;
        out.d_theta.assign(gt.data(), gt.data() + gt.size());
        out.d_x.assign(gx.data(), gx.data() + gx.size());
        return out;
    }

    // Adjoint differentiation against O = sum_i w_i X_i.
    const auto ops = build_circuit(spec, x, theta);
    StateVector psi(n);
    for (const auto &op : ops) {
        psi.apply(op.gate);
    }
    StateVector lambda(n);
    std::fill(lambda.amplitudes().begin(), lambda.amplitudes().end(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        if (upstream[i] == 0.0) {
            continue;
        }
        StateVector term = psi;
        term.apply_pauli(RotationAxis::X, i);
        auto dst = lambda.amplitudes();
        auto src = term.amplitudes();
        for (std::size_t k = 0; k < dst.size(); ++k) {
            dst[k] += upstream[i] * src[k];
        }
    }

    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const Gate &g = it->gate;
        if (it->source != ParamSource::None) {
            // d/dtheta exp(-i theta P / 2) = -i/2 P U, applied to the state
            // before the gate, equals -i/2 P psi_after.
            StateVector mu = psi;
            mu.apply_pauli(axis_of(g.kind), g.target);
            // 2 Re <lambda| -i/2 P psi> = Im <lambda| P psi>
            const double grad = std::imag(lambda.inner(mu));
            if (it->source == ParamSource::Theta) {
                out.d_theta[it->index] = grad;
            } else {
                out.d_x[it->index] = grad;
            }
        }
        psi.apply_adjoint(g);
        lambda.apply_adjoint(g);
    }
    return out;
}

} // namespace tthpo
