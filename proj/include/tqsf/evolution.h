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

#ifndef TQSF_EVOLUTION_H
#define TQSF_EVOLUTION_H

#include <cstdint>
#include <span>
#include <vector>

#include "tqsf/spin_algebra.h"
#include "tqsf/state_vector.h"

namespace tqsf {

enum class EvolutionMode { kExact, kTrotter };

/// U = exp(2 pi i alpha O) for a transposition-sum operator O.
struct PhaseUnitarySpec {
    TranspositionSum op;
    double alpha = 0.0;
    EvolutionMode mode = EvolutionMode::kExact;
    /// Number of first-order Trotter steps; ignored in exact mode.
    int trotter_steps = 1;
};

/// A unitary whose controlled powers can be applied, with a known spectrum.
/// This is everything phase estimation needs from the operator it reads.
class ControlledPhaseUnitary {
   public:
    virtual ~ControlledPhaseUnitary() = default;

    /// alpha * lambda for every distinct eigenvalue lambda.
    virtual std::vector<double> eigenphases() const = 0;

    /// Applies U^power on the branch where every control matches its value.
    virtual void apply_controlled(StateVector& state, std::span<const int> controls,
                                  std::span<const int> control_values, double power) const = 0;
};

/// exp(2 pi i alpha O) bound to concrete qubits of a larger register.
///
/// Only the qubits touched by O's transpositions are densified; the identity
/// coefficient becomes a phase on the controlled branch.
class PhaseUnitary final : public ControlledPhaseUnitary {
   public:
    /// qubits[k] hosts operator qubit k.
    PhaseUnitary(PhaseUnitarySpec spec, std::vector<int> qubits);

    const PhaseUnitarySpec& spec() const { return spec_; }
    const std::vector<double>& eigenvalues() const { return oracle_.eigenvalues; }
    std::vector<double> eigenphases() const override;

    void apply(StateVector& state, double power = 1.0) const;
    void apply_controlled(StateVector& state, std::span<const int> controls, std::span<const int> control_values,
                          double power) const override;

    /// The exact U^power as a dense gate on the operator's support.
    Gate exact_gate(double power) const;

   private:
    void apply_exact(StateVector& state, std::span<const int> controls, std::span<const int> control_values,
                     double power) const;
    void apply_trotter(StateVector& state, std::span<const int> controls, std::span<const int> control_values,
                       double power) const;

    PhaseUnitarySpec spec_;
    std::vector<int> qubits_;
    std::vector<int> support_;  // global qubit indices of the compacted operator
    TranspositionSum compact_;
    ProjectorSet oracle_;
};

/// U_z = exp(2 pi i N_1 / 2^register_size): a product of single-qubit phase gates.
class AzimuthalPhase final : public ControlledPhaseUnitary {
   public:
    AzimuthalPhase(std::vector<int> system, int register_size);

    std::vector<double> eigenphases() const override;
    void apply_controlled(StateVector& state, std::span<const int> controls, std::span<const int> control_values,
                          double power) const override;

    /// The same unitary as individual diag(1, e^{i pi power / 2^(r-1)}) gates, one per system qubit.
    std::vector<Gate> phase_gates(double power) const;

   private:
    std::vector<int> system_;
    int register_size_;
};

/// state <- cos(alpha) state + i sin(alpha) SWAP_ij state, i.e. exp(i alpha P_ij).
void apply_swap_rotation(StateVector& state, double alpha, int i, int j);

/// Same rotation restricted to the branch where the controls match.
void apply_swap_rotation(StateVector& state, double alpha, int i, int j, std::span<const int> controls,
                         std::span<const int> control_values);

/// exp(2 pi i alpha power O) with O on qubits 0..n-1, via the oracle's projectors.
void apply_exact(const PhaseUnitarySpec& spec, StateVector& state, double power = 1.0);

/// First-order Trotter approximation of the same unitary. Transpositions are
/// applied in lexicographic (i, j) order within each step.
void apply_trotter(const PhaseUnitarySpec& spec, StateVector& state, double power = 1.0);

}  // namespace tqsf

#endif  // TQSF_EVOLUTION_H
