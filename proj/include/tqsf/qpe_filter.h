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

#ifndef TQSF_QPE_FILTER_H
#define TQSF_QPE_FILTER_H

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tqsf/evolution.h"
#include "tqsf/spin_algebra.h"
#include "tqsf/state_vector.h"

namespace tqsf {

// ---------------------------------------------------------------------------
// Fourier transform and phase estimation

/// Quantum Fourier transform on `reg` (reg[0] is the least-significant bit):
/// |x> -> 2^{-m/2} sum_y e^{2 pi i x y / 2^m} |y>. The inverse undoes it.
void qft(StateVector& state, std::span<const int> reg, bool inverse = false);

/// Throws ConfigurationError unless every eigenphase times 2^register_size is an
/// integer in [0, 2^register_size) and no two eigenphases share an integer.
void check_phase_resolution(const ControlledPhaseUnitary& unitary, int register_size);

/// Hadamards on `reg`, controlled U^(2^b) from reg[b], inverse QFT.
/// Afterwards the register holds the eigenphase integers of the components.
void run_qpe(StateVector& state, std::span<const int> reg, const ControlledPhaseUnitary& unitary);

// ---------------------------------------------------------------------------
// Register layouts

enum class Method { kA, kBPrefixSpin, kBCoupling, kC, kCDeferred };

std::string_view method_name(Method method);
/// Parses "a", "b-s2j", "b-hj", "c", "c-deferred" (case-insensitive).
Method parse_method(std::string_view text);

enum class RegisterRole {
    kAzimuthal,   ///< reads N_1
    kTotalSpin,   ///< reads S^2 of all n qubits
    kPrefixSpin,  ///< reads S^2_[j]
    kCoupling,    ///< reads H_[j] + 1
    kStep,        ///< one Hadamard-test ancilla for step j
};

/// How H_[j] registers are sized. kLiteral keeps the smallest n_[j] > log2(j-1),
/// which lets two eigenvalues share a register integer.
enum class CouplingRegisterBound { kInjective, kLiteral };

struct Register {
    std::string name;
    RegisterRole role = RegisterRole::kAzimuthal;
    /// Prefix length j for path and step registers, 0 otherwise.
    int prefix = 0;
    /// qubits[0] holds the least-significant bit of the register integer.
    std::vector<int> qubits;
};

/// System qubits occupy 0..n-1; registers follow in output order.
struct RegisterLayout {
    Method method = Method::kA;
    int n = 0;
    std::vector<int> system;
    std::vector<Register> registers;

    int total_qubits() const;
    /// Every register's qubits, concatenated in register order.
    std::vector<int> ancillas() const;
    /// Splits a pattern over ancillas() into one integer per register.
    std::vector<std::uint64_t> split(std::uint64_t pattern) const;
    /// Per-register bitstrings joined by spaces, each most-significant bit first.
    std::string joint_bitstring(std::span<const std::uint64_t> values) const;
};

RegisterLayout method_a_layout(int n);
RegisterLayout method_b_layout(int n, Method variant,
                               CouplingRegisterBound bound = CouplingRegisterBound::kInjective);
RegisterLayout method_c_layout(int n, Method variant = Method::kC);
RegisterLayout make_layout(int n, Method method, CouplingRegisterBound bound = CouplingRegisterBound::kInjective);

// ---------------------------------------------------------------------------
// Labels

/// Sequence of prefix spins S_[1..n], stored doubled.
struct PathLabel {
    std::vector<int> two_s_sequence;

    /// Builds the path from step bits (1 = increase, leftmost bit = step j=2).
    static PathLabel from_step_bits(std::string_view bits);

    std::string step_bits() const;
    int final_two_s() const { return two_s_sequence.back(); }
    /// |two_s[j] - two_s[j-1]| = 1, all entries >= 0, starts at 1.
    bool valid() const;

    auto operator<=>(const PathLabel&) const = default;
};

/// Alternative rendering with 0 marking an increase and step j=2 written rightmost.
std::string path_bits_right_to_left(const PathLabel& path);

/// Recovers the path from H_[j] eigenvalues h_[2..n].
PathLabel path_from_coupling_eigenvalues(std::span<const int> h);

/// Each H_[j] eigenvalue along a path: S_[j-1] + (j-1)/2 on an increase, -S_[j-1] + (j-3)/2 on a decrease.
std::vector<int> coupling_eigenvalues(const PathLabel& path);

struct RegisterReading {
    std::string name;
    std::string bits;

    bool operator==(const RegisterReading&) const = default;
};

struct DecodedLabel {
    std::optional<SpinLabel> spin;
    std::optional<PathLabel> path;
};

/// Decodes one integer per register of `layout`. Throws DecodeError on any
/// unattainable value or inconsistent path.
DecodedLabel decode_outcome(const RegisterLayout& layout, std::span<const std::uint64_t> register_values);

/// One filtered branch.
struct FilterOutcome {
    /// (S, M) for methods A and B.
    std::optional<SpinLabel> spin;
    /// Prefix-spin path for methods B and C.
    std::optional<PathLabel> path;
    double probability = 0.0;
    /// Normalized system state left by the measurement (exact enumeration only).
    std::optional<StateVector> post_state;
    std::vector<RegisterReading> raw_bits;
    /// Joint ancilla pattern (bit order of RegisterLayout::ancillas()).
    std::uint64_t pattern = 0;

    /// "S=1,M=-1", "path=101,S=1,M=1", "path=011,S=1", or "undecoded" if nothing decoded.
    std::string label() const;
};

// ---------------------------------------------------------------------------
// Filters

struct FilterOptions {
    EvolutionMode mode = EvolutionMode::kExact;
    int trotter_steps = 64;
    CouplingRegisterBound coupling_bound = CouplingRegisterBound::kInjective;
};

/// The joint system-plus-ancilla state right before the final measurement.
struct CircuitRun {
    RegisterLayout layout;
    StateVector final_state;
};

CircuitRun run_method_a_circuit(const StateVector& state, const FilterOptions& options = {});
CircuitRun run_method_b_circuit(const StateVector& state, Method variant, const FilterOptions& options = {});
CircuitRun run_method_c_deferred_circuit(const StateVector& state, const FilterOptions& options = {});

/// Enumerates every ancilla outcome of `run` with its collapsed system state.
/// In exact mode an undecodable outcome throws DecodeError; in Trotter mode
/// it is reported without labels.
std::vector<FilterOutcome> enumerate_outcomes(const CircuitRun& run, EvolutionMode mode);

/// Samples `shots` ancilla readouts of `run`; counts keyed by joint pattern.
std::map<std::uint64_t, std::uint64_t> sample_outcomes(const CircuitRun& run, std::uint64_t shots,
                                                       std::uint64_t seed);

/// Joint S^2 and S_z filter: one outcome per (S, M) with probability A_{S,M}.
std::vector<FilterOutcome> method_a(const StateVector& state, const FilterOptions& options = {});

/// Path-resolved filter: one outcome per (path, M) with probability |c^g_{S,M}|^2.
std::vector<FilterOutcome> method_b(const StateVector& state, Method variant, const FilterOptions& options = {});

/// Coherent version of the sequential filter: every classically controlled
/// step becomes a block controlled on the earlier step ancillas.
std::vector<FilterOutcome> method_c_deferred(const StateVector& state, const FilterOptions& options = {});

/// One shot of the sequential Hadamard-test filter with classical feedback.
struct ShotRecord {
    PathLabel path;
    /// Born probability of this particular sequence of readouts.
    double probability = 1.0;
    StateVector post_state;
};

ShotRecord method_c(const StateVector& state, Rng& rng, const FilterOptions& options = {});
ShotRecord method_c(const StateVector& state, std::uint64_t seed, const FilterOptions& options = {});

/// Exact distribution of the sequential filter, branching on every readout.
std::vector<FilterOutcome> method_c_distribution(const StateVector& state, const FilterOptions& options = {});

/// Runs method C `shots` times with one engine seeded by `seed`; counts keyed by path.
std::map<PathLabel, std::uint64_t> method_c_histogram(const StateVector& state, std::uint64_t shots,
                                                      std::uint64_t seed, const FilterOptions& options = {});

}  // namespace tqsf

#endif  // TQSF_QPE_FILTER_H
