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

#ifndef TQSF_SPIN_ALGEBRA_H
#define TQSF_SPIN_ALGEBRA_H

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tqsf/state_vector.h"

namespace tqsf {

/// Dense oracle dimension limit (2^12).
inline constexpr int kMaxOracleQubits = 12;

/// Eigenvalues closer than this are treated as one degenerate level.
inline constexpr double kEigenvalueClusterTolerance = 1e-8;

/// Renders a value stored as twice its size: 2 -> "1", 3 -> "3/2", -1 -> "-1/2".
std::string format_half_integer(int twice);

/// Total spin S and azimuthal projection M, both stored doubled.
struct SpinLabel {
    int two_s = 0;
    int two_m = 0;

    /// |M| <= S <= n/2 with S congruent to n/2 modulo 1.
    bool valid_for(int n) const;
    std::string to_string() const;

    auto operator<=>(const SpinLabel&) const = default;
};

/// Every (S, M) label available to n spins, ordered by S then M descending.
std::vector<SpinLabel> spin_labels(int n);

/// Transposition P_ij (the SWAP of qubits i and j) with a real weight.
struct Transposition {
    int i = 0;
    int j = 0;
    double coefficient = 1.0;
};

/// The Hermitian operator (c0 I + sum_p c_p P_{i_p j_p}) / d on num_qubits qubits.
///
/// Every total-spin operator used by the filters has this form; the dense
/// matrix is only materialized on request.
class TranspositionSum {
   public:
    TranspositionSum(int num_qubits, double identity_coefficient, std::vector<Transposition> terms,
                     double denominator = 1.0);

    int num_qubits() const { return num_qubits_; }
    double identity_coefficient() const { return identity_coefficient_; }
    const std::vector<Transposition>& terms() const { return terms_; }
    double denominator() const { return denominator_; }

    /// Qubits touched by at least one transposition, ascending.
    std::vector<int> support() const;

    /// The same operator relabelled onto its support only, with the support indices.
    std::pair<TranspositionSum, std::vector<int>> compacted() const;

    Eigen::MatrixXd to_dense() const;

    /// O psi for a vector over num_qubits qubits (no normalization).
    std::vector<Complex> apply(std::span<const Complex> psi) const;

   private:
    int num_qubits_;
    double identity_coefficient_;
    std::vector<Transposition> terms_;
    double denominator_;
};

/// S^2 = n(4-n)/4 I + sum_{i<j} P_ij.
TranspositionSum total_spin_squared(int n);

/// S^2 of the first j qubits, embedded in an n-qubit space.
TranspositionSum prefix_spin_squared(int j, int n);

/// H_[j] = sum_{i<j-1} P_{i,j-1}: couples qubit j-1 to every earlier qubit.
TranspositionSum coupling_operator(int j, int n);

/// G_[j] = (S^2_[j] - S^2_[j-1] + S_[j-1] + 1/4) / (2 S_[j-1] + 1).
///
/// On the subspace where the first j-1 qubits carry spin S_[j-1] (two_s_prev / 2)
/// its eigenvalue is 1 when adding qubit j-1 raises the spin and 0 when it lowers it.
/// S_[j-1] = 0 only allows an increase, so two_s_prev must be at least 1.
TranspositionSum step_operator(int j, int n, int two_s_prev);

/// N_1: counts the qubits in |1>. Diagonal in the computational basis.
class HammingWeightOperator {
   public:
    explicit HammingWeightOperator(int n);

    int num_qubits() const { return n_; }
    int eigenvalue(std::uint64_t basis_index) const;
    Eigen::MatrixXd to_dense() const;

   private:
    int n_;
};

/// 2M = n - 2k for a basis state of Hamming weight k.
int azimuthal_two_m(int n, int hamming_weight);

/// Spectral decomposition of a real symmetric operator with degenerate levels grouped.
struct ProjectorSet {
    /// Distinct eigenvalues, ascending.
    std::vector<double> eigenvalues;
    /// projectors[k] is the orthogonal projector onto the eigenvalues[k] eigenspace.
    std::vector<Eigen::MatrixXd> projectors;

    Eigen::Index dimension() const;
    int rank(std::size_t level) const;
    /// Index of the level within kEigenvalueClusterTolerance of `value`, if any.
    std::optional<std::size_t> find(double value) const;
};

/// Dense Hermitian eigendecomposition oracle.
ProjectorSet eigen_oracle(const Eigen::MatrixXd& symmetric);
ProjectorSet eigen_oracle(const TranspositionSum& op);

/// Weight <Psi|P_[S,M]|Psi> and the normalized projected state when the weight is nonzero.
struct ProjectedComponent {
    double weight = 0.0;
    std::optional<StateVector> state;
};

/// Joint (S^2, S_z) projectors for n qubits, built once from the oracle.
class SpinDecomposition {
   public:
    explicit SpinDecomposition(int n);

    int num_qubits() const { return n_; }
    const ProjectorSet& total_spin() const { return total_spin_; }

    Eigen::MatrixXd projector(SpinLabel label) const;
    ProjectedComponent project(const StateVector& state, SpinLabel label) const;
    /// Rank of P_[S,M].
    int rank(SpinLabel label) const;

   private:
    int n_;
    ProjectorSet total_spin_;
};

ProjectedComponent project_spin(const StateVector& state, SpinLabel label);

/// d_{S,M} = C(n, n/2 - S) - C(n, n/2 - S - 1).
int degeneracy(int n, int two_s);

enum class RegisterKind {
    kAzimuthal,  ///< QPE on N_1, eigenvalues 0..n
    kSpinEven,   ///< QPE on S^2 for even n, phase integers S(S+1)/2
    kSpinOdd,    ///< QPE on S^2 - 3/4 for odd n, phase integers (S-1/2)(S+3/2)
    kCoupling,   ///< QPE on H_[j] + 1, phase integers 0..j
};

/// Smallest register making every eigenphase a distinct binary fraction in [0, 1).
/// `count` is n for the first three kinds and j for kCoupling.
int min_ancillas(RegisterKind kind, int count);

/// min_ancillas for the S^2 register of n spins, choosing even/odd by n.
int min_spin_ancillas(int n);

/// The register integer that encodes total spin two_s / 2 of n spins.
std::uint64_t spin_phase_integer(int two_s, int n);

/// Inverts spin_phase_integer. Throws DecodeError for unattainable integers.
int decode_spin(std::uint64_t phase_integer, int n);

}  // namespace tqsf

#endif  // TQSF_SPIN_ALGEBRA_H
