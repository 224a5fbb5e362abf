// Copyright 2026 The TQSf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tqsf/evolution.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tqsf/errors.h"

namespace tqsf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t control_mask(std::span<const int> controls) {
    std::uint64_t mask = 0;
    for (int c : controls) {
        mask |= std::uint64_t{1} << c;
    }
    return mask;
}

std::uint64_t control_pattern(std::span<const int> controls, std::span<const int> values) {
    if (controls.size() != values.size()) {
        throw InputError("one control value is required per control qubit");
    }
    std::uint64_t pattern = 0;
    for (std::size_t k = 0; k < controls.size(); ++k) {
        if (values[k] != 0 && values[k] != 1) {
            throw InputError("control values must be 0 or 1");
        }
        pattern |= static_cast<std::uint64_t>(values[k]) << controls[k];
    }
    return pattern;
}

void check_controls(const StateVector& state, std::span<const int> controls, std::span<const int> operator_qubits) {
    for (int c : controls) {
        if (c < 0 || c >= state.num_qubits()) {
            throw InputError("control qubit " + std::to_string(c) + " out of range");
        }
        if (std::find(operator_qubits.begin(), operator_qubits.end(), c) != operator_qubits.end()) {
            throw InputError("control qubit " + std::to_string(c) + " overlaps the operator's qubits");
        }
    }
}

std::vector<int> identity_map(int n) {
    std::vector<int> q(static_cast<std::size_t>(n));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Swap rotations

void apply_swap_rotation(StateVector& state, double alpha, int i, int j) {
    apply_swap_rotation(state, alpha, i, j, {}, {});
}

void apply_swap_rotation(StateVector& state, double alpha, int i, int j, std::span<const int> controls,
                         std::span<const int> control_values) {
    const int n = state.num_qubits();
    if (i == j) {
        throw InputError("swap rotation needs two distinct qubits");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
        throw InputError("swap rotation qubit out of range");
    }
    const std::array<int, 2> pair{i, j};
    check_controls(state, controls, pair);
    const std::uint64_t mask = control_mask(controls);
    const std::uint64_t want = control_pattern(controls, control_values);

    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const Complex diagonal(c, s);  // e^{i alpha}: both qubits equal, SWAP acts as identity
    const Complex cross(0.0, s);
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;

    auto amps = state.mutable_amplitudes();
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if ((k & mask) != want) {
            continue;
        }
        const bool hi = (k & bi) != 0;
        const bool hj = (k & bj) != 0;
        if (hi == hj) {
            amps[k] *= diagonal;
        } else if (!hi) {
            const std::uint64_t partner = k ^ bi ^ bj;
            const Complex a = amps[k];
            const Complex b = amps[partner];
            amps[k] = c * a + cross * b;
            amps[partner] = c * b + cross * a;
        }
    }
}

// ---------------------------------------------------------------------------
// PhaseUnitary

PhaseUnitary::PhaseUnitary(PhaseUnitarySpec spec, std::vector<int> qubits)
    : spec_(std::move(spec)),
      qubits_(std::move(qubits)),
      compact_(spec_.op.compacted().first),
      oracle_(eigen_oracle(compact_)) {
    if (static_cast<int>(qubits_.size()) != spec_.op.num_qubits()) {
        throw InputError("qubit map size does not match the operator");
    }
    if (spec_.mode == EvolutionMode::kTrotter && spec_.trotter_steps < 1) {
        throw InputError("Trotter mode needs at least one step");
    }
    for (int local : spec_.op.compacted().second) {
        support_.push_back(qubits_[static_cast<std::size_t>(local)]);
    }
}

std::vector<double> PhaseUnitary::eigenphases() const {
    std::vector<double> out;
    out.reserve(oracle_.eigenvalues.size());
    for (double lambda : oracle_.eigenvalues) {
        out.push_back(spec_.alpha * lambda);
    }
    return out;
}

Gate PhaseUnitary::exact_gate(double power) const {
    const Eigen::Index dim = oracle_.dimension();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k < oracle_.eigenvalues.size(); ++k) {
        const Complex phase = std::polar(1.0, kTwoPi * spec_.alpha * power * oracle_.eigenvalues[k]);
        u += phase * oracle_.projectors[k].cast<Complex>();
    }
    return Gate(std::move(u), support_);
}

void PhaseUnitary::apply(StateVector& state, double power) const { apply_controlled(state, {}, {}, power); }

void PhaseUnitary::apply_controlled(StateVector& state, std::span<const int> controls,
                                    std::span<const int> control_values, double power) const {
    check_controls(state, controls, qubits_);
    if (spec_.mode == EvolutionMode::kExact) {
        apply_exact(state, controls, control_values, power);
    } else {
        apply_trotter(state, controls, control_values, power);
    }
}

void PhaseUnitary::apply_exact(StateVector& state, std::span<const int> controls,
                               std::span<const int> control_values, double power) const {
    state.apply_controlled(controls, control_values, exact_gate(power));
}

void PhaseUnitary::apply_trotter(StateVector& state, std::span<const int> controls,
                                 std::span<const int> control_values, double power) const {
    const TranspositionSum& op = spec_.op;
    const double scale = kTwoPi * spec_.alpha * power / op.denominator();

    // Identity part, exact.
    Eigen::MatrixXcd global(1, 1);
    global(0, 0) = std::polar(1.0, scale * op.identity_coefficient());
    state.apply_controlled(controls, control_values, Gate(std::move(global), {}));

    std::vector<Transposition> ordered = op.terms();
    std::sort(ordered.begin(), ordered.end(), [](const Transposition& a, const Transposition& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    const int steps = spec_.trotter_steps;
    for (int step = 0; step < steps; ++step) {
        for (const auto& t : ordered) {
            const double angle = scale * t.coefficient / steps;
            apply_swap_rotation(state, angle, qubits_[static_cast<std::size_t>(t.i)],
                                qubits_[static_cast<std::size_t>(t.j)], controls, control_values);
        }
    }
}

void apply_exact(const PhaseUnitarySpec& spec, StateVector& state, double power) {
    PhaseUnitarySpec exact = spec;
    exact.mode = EvolutionMode::kExact;
    PhaseUnitary(std::move(exact), identity_map(spec.op.num_qubits())).apply(state, power);
}

void apply_trotter(const PhaseUnitarySpec& spec, StateVector& state, double power) {
    PhaseUnitarySpec trotter = spec;
    trotter.mode = EvolutionMode::kTrotter;
    PhaseUnitary(std::move(trotter), identity_map(spec.op.num_qubits())).apply(state, power);
}

// ---------------------------------------------------------------------------
// AzimuthalPhase

AzimuthalPhase::AzimuthalPhase(std::vector<int> system, int register_size)
    : system_(std::move(system)), register_size_(register_size) {
    if (system_.empty()) {
        throw InputError("azimuthal phase needs at least one system qubit");
    }
    if (register_size_ < 1) {
        throw InputError("azimuthal register needs at least one qubit");
    }
}

std::vector<double> AzimuthalPhase::eigenphases() const {
    std::vector<double> out;
    const double alpha = std::ldexp(1.0, -register_size_);
    for (std::size_t k = 0; k <= system_.size(); ++k) {
        out.push_back(alpha * static_cast<double>(k));
    }
    return out;
}

void AzimuthalPhase::apply_controlled(StateVector& state, std::span<const int> controls,
                                      std::span<const int> control_values, double power) const {
    check_controls(state, controls, system_);
    const std::uint64_t mask = control_mask(controls);
    const std::uint64_t want = control_pattern(controls, control_values);
    std::uint64_t system_mask = 0;
    for (int q : system_) {
        system_mask |= std::uint64_t{1} << q;
    }
    std::vector<Complex> table(system_.size() + 1);
    for (std::size_t k = 0; k < table.size(); ++k) {
        table[k] = std::polar(1.0, kTwoPi * power * static_cast<double>(k) * std::ldexp(1.0, -register_size_));
    }
    auto amps = state.mutable_amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        if ((idx & mask) == want) {
            amps[idx] *= table[static_cast<std::size_t>(std::popcount(idx & system_mask))];
        }
    }
}

std::vector<Gate> AzimuthalPhase::phase_gates(double power) const {
    std::vector<Gate> gates;
    const double theta = std::numbers::pi * power * std::ldexp(1.0, -(register_size_ - 1));
    for (int q : system_) {
        gates.push_back(Gate::phase(q, theta));
    }
    return gates;
}

}  // namespace tqsf
