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

#include <cmath>
#include <numbers>
#include <set>

#include "tqsf/errors.h"
#include "tqsf/qpe_filter.h"

namespace tqsf {

namespace {

constexpr double kPhaseTolerance = 1e-9;

struct FourierOp {
    enum class Kind { kHadamard, kControlledPhase, kSwap } kind;
    int a;  // target (or first swap qubit)
    int b;  // control (or second swap qubit)
    double theta;
};

std::vector<FourierOp> fourier_ops(std::span<const int> reg) {
    std::vector<FourierOp> ops;
    const int m = static_cast<int>(reg.size());
    for (int i = m - 1; i >= 0; --i) {
        ops.push_back({FourierOp::Kind::kHadamard, reg[i], -1, 0.0});
        for (int k = i - 1; k >= 0; --k) {
            ops.push_back({FourierOp::Kind::kControlledPhase, reg[i], reg[k], std::numbers::pi / std::ldexp(1.0, i - k)});
        }
    }
    for (int i = 0; i < m / 2; ++i) {
        ops.push_back({FourierOp::Kind::kSwap, reg[i], reg[m - 1 - i], 0.0});
    }
    return ops;
}

void apply_op(StateVector& state, const FourierOp& op, bool adjoint) {
    switch (op.kind) {
        case FourierOp::Kind::kHadamard:
            state.apply(Gate::hadamard(op.a));
            break;
        case FourierOp::Kind::kControlledPhase: {
            const int control[] = {op.b};
            const int value[] = {1};
            state.apply_controlled(control, value, Gate::phase(op.a, adjoint ? -op.theta : op.theta));
            break;
        }
        case FourierOp::Kind::kSwap:
            state.apply(Gate::swap(op.a, op.b));
            break;
    }
}

}  // namespace

void qft(StateVector& state, std::span<const int> reg, bool inverse) {
    const std::vector<FourierOp> ops = fourier_ops(reg);
    if (!inverse) {
        for (const auto& op : ops) {
            apply_op(state, op, false);
        }
    } else {
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            apply_op(state, *it, true);
        }
    }
}

void check_phase_resolution(const ControlledPhaseUnitary& unitary, int register_size) {
    const double scale = std::ldexp(1.0, register_size);
    std::set<long long> seen;
    for (double phase : unitary.eigenphases()) {
        const double x = phase * scale;
        const double rounded = std::round(x);
        if (std::abs(x - rounded) > kPhaseTolerance) {
            throw ConfigurationError("eigenphase " + std::to_string(phase) + " is not a " +
                                     std::to_string(register_size) + "-bit binary fraction");
        }
        if (rounded < 0 || rounded >= scale) {
            throw ConfigurationError("eigenphase " + std::to_string(phase) + " falls outside [0, 1) and aliases to " +
                                     std::to_string(static_cast<long long>(rounded) % static_cast<long long>(scale)) +
                                     " on a " + std::to_string(register_size) + "-qubit register");
        }
        if (!seen.insert(static_cast<long long>(rounded)).second) {
            throw ConfigurationError("two eigenvalues share register integer " +
                                     std::to_string(static_cast<long long>(rounded)));
        }
    }
}

void run_qpe(StateVector& state, std::span<const int> reg, const ControlledPhaseUnitary& unitary) {
    check_phase_resolution(unitary, static_cast<int>(reg.size()));
    for (int q : reg) {
        state.apply(Gate::hadamard(q));
    }
    const int value[] = {1};
    for (std::size_t b = 0; b < reg.size(); ++b) {
        const int control[] = {reg[b]};
        unitary.apply_controlled(state, control, value, std::ldexp(1.0, static_cast<int>(b)));
    }
    qft(state, reg, true);
}

}  // namespace tqsf
