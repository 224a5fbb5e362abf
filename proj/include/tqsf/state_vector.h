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

#ifndef TQSF_STATE_VECTOR_H
#define TQSF_STATE_VECTOR_H

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tqsf {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Largest total qubit count (system plus ancillas) the dense simulator accepts.
inline constexpr int kMaxQubits = 25;

/// Outcomes whose probability falls below this are dropped from exact distributions.
inline constexpr double kProbabilityFloor = 1e-12;

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Unlike std::uniform_real_distribution, the result is identical across standard libraries.
double uniform01(Rng& rng);

/// Renders `value` as `width` bits, most-significant bit first.
std::string format_bits(std::uint64_t value, int width);

/// A unitary acting on an ordered list of target qubits.
///
/// Bit b of a matrix row/column index corresponds to targets[b].
class Gate {
   public:
    Gate(Eigen::MatrixXcd matrix, std::vector<int> targets);

    static Gate hadamard(int qubit);
    static Gate pauli_x(int qubit);
    static Gate phase(int qubit, double theta);
    static Gate swap(int a, int b);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const std::vector<int>& targets() const { return targets_; }
    Gate adjoint() const;

   private:
    Eigen::MatrixXcd matrix_;
    std::vector<int> targets_;
};

/// Dense amplitude vector over `num_qubits` qubits.
///
/// Qubit 0 is the least-significant bit of a basis-state index. Bitstrings
/// are written most-significant qubit first, so "01" on two qubits means
/// qubit 0 is set.
class StateVector {
   public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::string_view bitstring);

    /// Amplitudes must have power-of-two length. With `normalize` false the
    /// norm must already be 1 within 1e-12.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes, bool normalize = false);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[index]; }

    /// Raw access for kernels that implement their own unitary updates.
    /// Callers are responsible for keeping the vector normalized.
    std::span<Complex> mutable_amplitudes() { return amplitudes_; }

    double norm() const;

    void apply(const Gate& gate);
    void apply_controlled(std::span<const int> controls, std::span<const int> control_values,
                          const Gate& gate);

    /// Zeroes every amplitude inconsistent with `bits` on `qubits` and renormalizes.
    /// Returns the Born weight of the kept branch.
    double collapse(std::span<const int> qubits, std::uint64_t bits);

    /// Appends `extra` qubits in |0> above the current ones.
    StateVector extended(int extra) const;

   private:
    StateVector(int num_qubits, std::vector<Complex> amplitudes);

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Outcome of a projective computational-basis measurement.
struct MeasurementResult {
    /// Measured qubit index to observed bit.
    std::map<int, int> bits;
    double probability = 0.0;
    StateVector post_state;
};

/// Samples `qubits` with Born probabilities and collapses the state.
MeasurementResult measure(StateVector state, std::span<const int> qubits, Rng& rng);

/// Unpruned probabilities of every pattern on `qubits`; entry i has bit b of i
/// equal to the value of qubits[b].
std::vector<double> register_probabilities(const StateVector& state, std::span<const int> qubits);

/// Exact distribution over `qubits`, keyed by bitstring (qubits.back() first).
/// Entries below kProbabilityFloor are pruned.
std::map<std::string, double> outcome_distribution(const StateVector& state, std::span<const int> qubits);

/// Histogram of `shots` independent measurements of `qubits`, reproducible for a fixed seed.
std::map<std::string, std::uint64_t> sample_counts(const StateVector& state, std::span<const int> qubits,
                                                   std::uint64_t shots, std::uint64_t seed);

/// Histogram of `shots` measurements keyed by pattern index (bit b of the key is qubits[b]).
std::map<std::uint64_t, std::uint64_t> sample_pattern_counts(const StateVector& state, std::span<const int> qubits,
                                                             std::uint64_t shots, std::uint64_t seed);

/// Draws one pattern index from unnormalized `weights`, ignoring entries below 1e-15.
std::size_t sample_index(std::span<const double> weights, Rng& rng);

/// One measurement branch: the pattern observed on the measured qubits and the
/// normalized state left on the remaining qubits (in ascending index order).
struct Branch {
    std::uint64_t bits = 0;
    double probability = 0.0;
    StateVector remainder;
};

/// Enumerates every branch of measuring `qubits` whose probability exceeds kProbabilityFloor.
std::vector<Branch> enumerate_branches(const StateVector& state, std::span<const int> qubits);

}  // namespace tqsf

#endif  // TQSF_STATE_VECTOR_H
