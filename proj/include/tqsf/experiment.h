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

#ifndef TQSF_EXPERIMENT_H
#define TQSF_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tqsf/qpe_filter.h"

namespace tqsf {

inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kResultSchema = "tqsf.result/1";

/// |+>^n.
StateVector hadamard_state(int n);

/// H^n X_1 X_3 |0>: |+> on even qubits 0 and 2, |-> on qubits 1 and 3, |+> beyond. Needs n >= 4.
StateVector hadamard_x13_state(int n);

/// Reads one "real imag" pair per line (blank lines and '#' comments skipped).
/// The vector is renormalized; a warning is appended when the norm was off by more than 1e-6.
StateVector load_amplitude_file(const std::string& path, int n, std::vector<std::string>& warnings);

/// Random normalized state with independent complex Gaussian amplitudes.
StateVector random_state(int n, Rng& rng);

struct ExperimentConfig {
    int n = 4;
    /// "hadamard", "hadamard-x13", an n-character bitstring, or the path of an amplitude file.
    std::string state = "hadamard";
    Method method = Method::kA;
    EvolutionMode mode = EvolutionMode::kExact;
    int trotter_steps = 64;
    /// 0 means exact probabilities only.
    std::uint64_t shots = 0;
    std::uint64_t seed = kDefaultSeed;
    CouplingRegisterBound coupling_bound = CouplingRegisterBound::kInjective;

    /// Throws InputError when the combination is not runnable.
    void validate() const;
};

StateVector prepare_initial_state(const ExperimentConfig& config, std::vector<std::string>& warnings);

struct OutcomeRow {
    std::string label;
    std::optional<SpinLabel> spin;
    std::optional<PathLabel> path;
    std::vector<RegisterReading> raw_bits;
    double probability = 0.0;
    std::optional<std::uint64_t> count;
};

struct ResultDocument {
    ExperimentConfig config;
    RegisterLayout layout;
    std::vector<OutcomeRow> outcomes;
    std::vector<std::string> warnings;
    std::string timestamp;
};

ResultDocument run_experiment(const ExperimentConfig& config);

// Rendering (report.cc)

nlohmann::ordered_json to_json(const ResultDocument& doc);
std::string to_csv(const ResultDocument& doc);
std::string to_svg(const ResultDocument& doc);
nlohmann::ordered_json layout_to_json(const RegisterLayout& layout);
std::string layout_to_text(const RegisterLayout& layout);

// Random-number demo

struct RngDemoResult {
    int n = 0;
    int register_size = 0;
    /// Exact readout probability of each k = 0..n.
    std::vector<double> probabilities;
    /// One k per shot, in draw order.
    std::vector<int> samples;

    double sample_mean() const;      ///< mean of x = k/n
    double sample_variance() const;  ///< unbiased variance of x = k/n
};

/// Reads the N_1 register of phase estimation on |+>^n; k/n is binomially distributed.
RngDemoResult rng_demo(int n, std::uint64_t shots, std::uint64_t seed);
std::string rng_samples_csv(const RngDemoResult& result);

// Cross-check suite

struct VerifyCheck {
    std::string name;
    int n = 0;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int n_max = 4;
    int random_states = 20;
    std::uint64_t seed = kDefaultSeed;
};

std::vector<VerifyCheck> run_verify(const VerifyOptions& options);
nlohmann::ordered_json verify_to_json(const std::vector<VerifyCheck>& checks);

}  // namespace tqsf

#endif  // TQSF_EXPERIMENT_H
