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
 * Exact statevector simulation of the variational quantum layer.
 *
 * Circuit for n qubits and depth q:
 *
 *     |0...0>  ->  H on every wire  ->  RY(x_i) on wire i
 *              ->  q x [ CNOT ring i -> (i+1) mod n, ascending i
 *                        R_axis(l)(theta[l*n + i]) on wire i ]
 *
 * and the layer output is (<X_0>, ..., <X_{n-1}>). Wire 0 is the most
 * significant bit of the amplitude index.
 */

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tthpo {

using Complex = std::complex<double>;

enum class GateKind { H, RX, RY, RZ, CNOT };
enum class RotationAxis { X, Y, Z };

struct Gate {
    GateKind kind = GateKind::H;
    std::size_t target = 0;
    /// CNOT only.
    std::size_t control = 0;
    /// Rotation angle (radians); rotations are exp(-i theta P / 2).
    double theta = 0.0;

    static Gate h(std::size_t wire) { return {GateKind::H, wire, 0, 0.0}; }
    static Gate rx(std::size_t wire, double t) { return {GateKind::RX, wire, 0, t}; }
    static Gate ry(std::size_t wire, double t) { return {GateKind::RY, wire, 0, t}; }
    static Gate rz(std::size_t wire, double t) { return {GateKind::RZ, wire, 0, t}; }
    static Gate rot(RotationAxis axis, std::size_t wire, double t);
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, target, control, 0.0};
    }
};

/// Upper bound on simulated qubits (2^16 amplitudes, 1 MiB).
inline constexpr std::size_t kMaxQubits = 16;

class StateVector {
  public:
    /// |0...0> on `qubits` wires.
    explicit StateVector(std::size_t qubits);

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }

    void apply(const Gate &gate);
    /// Applies the inverse of `gate`.
    void apply_adjoint(const Gate &gate);
    /// Applies the Pauli operator X, Y or Z to `wire`.
    void apply_pauli(RotationAxis axis, std::size_t wire);

    [[nodiscard]] double expectation_x(std::size_t wire) const;
    /// Sum of |amplitude|^2.
    [[nodiscard]] double norm() const;

    /// <this|other>
    [[nodiscard]] Complex inner(const StateVector &other) const;

  private:
    void check_wire(std::size_t wire) const;
    void apply_single(std::size_t wire, Complex u00, Complex u01, Complex u10, Complex u11);
    void apply_cnot(std::size_t control, std::size_t target);

    std::size_t qubits_;
    std::vector<Complex> amps_;
};

/// Value-semantics form of StateVector::apply.
StateVector apply_gate(StateVector state, const Gate &gate);

struct QuantumLayerSpec {
    std::size_t qubits = 1;
    std::size_t depth = 1;
    /// Rotation axis per layer; empty means X, Y, Z cycling by layer index.
    std::vector<RotationAxis> axis_schedule;
    std::size_t max_qubits = kMaxQubits;

    [[nodiscard]] RotationAxis axis_for_layer(std::size_t layer) const;
    [[nodiscard]] std::size_t parameter_count() const noexcept { return qubits * depth; }
};

void validate(const QuantumLayerSpec &spec);

/// Where a gate's angle comes from.
enum class ParamSource { None, Input, Theta };

struct CircuitOp {
    Gate gate;
    ParamSource source = ParamSource::None;
    std::size_t index = 0;
};

std::vector<CircuitOp> build_circuit(const QuantumLayerSpec &spec, std::span<const double> x,
                                     std::span<const double> theta);

/// Final state of the layer circuit.
StateVector prepare_state(const QuantumLayerSpec &spec, std::span<const double> x,
                          std::span<const double> theta);

/// Per-wire X expectations, each in [-1, 1].
std::vector<double> forward(const QuantumLayerSpec &spec, std::span<const double> x,
                            std::span<const double> theta);

struct LayerJacobian {
    /// n x (n*q): d<X_i>/d theta_j
    Eigen::MatrixXd d_theta;
    /// n x n: d<X_i>/d x_j
    Eigen::MatrixXd d_x;
};

/// Full Jacobian by the parameter-shift rule (f(t + pi/2) - f(t - pi/2)) / 2.
LayerJacobian gradient(const QuantumLayerSpec &spec, std::span<const double> x,
                       std::span<const double> theta);

enum class QuantumGradient { ParameterShift, Adjoint };

struct LayerVjp {
    std::vector<double> d_theta;
    std::vector<double> d_x;
};

/**
 * @brief Vector-Jacobian product w^T J for upstream weights w (length n).
 *
 * ParameterShift runs two shifted circuits per angle. Adjoint runs one
 * backward pass through the circuit against the observable sum_i w_i X_i;
 * both are exact, adjoint is far cheaper for wide circuits.
 */
LayerVjp vjp(const QuantumLayerSpec &spec, std::span<const double> x,
             std::span<const double> theta, std::span<const double> upstream,
             QuantumGradient method);

} // namespace tthpo
