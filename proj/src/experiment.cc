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

#include "tqsf/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "tqsf/errors.h"

namespace tqsf {

namespace {

bool is_bitstring(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

OutcomeRow row_from(const FilterOutcome& outcome, const RegisterLayout& layout) {
    OutcomeRow row;
    row.spin = outcome.spin;
    row.path = outcome.path;
    row.raw_bits = outcome.raw_bits;
    row.probability = outcome.probability;
    row.label = outcome.label();
    if (!outcome.spin && !outcome.path) {
        row.label += ":" + layout.joint_bitstring(layout.split(outcome.pattern));
    }
    return row;
}

}  // namespace

StateVector hadamard_state(int n) {
    StateVector state(n);
    for (int q = 0; q < n; ++q) {
        state.apply(Gate::hadamard(q));
    }
    return state;
}

StateVector hadamard_x13_state(int n) {
    if (n < 4) {
        throw InputError("preset hadamard-x13 flips qubits 1 and 3 and needs n >= 4");
    }
    StateVector state(n);
    state.apply(Gate::pauli_x(1));
    state.apply(Gate::pauli_x(3));
    for (int q = 0; q < n; ++q) {
        state.apply(Gate::hadamard(q));
    }
    return state;
}

StateVector load_amplitude_file(const std::string& path, int n, std::vector<std::string>& warnings) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open amplitude file '" + path + "'");
    }
    std::vector<Complex> amps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> re)) {
            continue;
        }
        if (!(fields >> im)) {
            throw InputError(path + ":" + std::to_string(line_no) + ": expected 'real imag'");
        }
        amps.emplace_back(re, im);
    }
    const std::size_t expected = std::size_t{1} << n;
    if (amps.size() != expected) {
        throw InputError("amplitude file has " + std::to_string(amps.size()) + " entries, expected 2^" +
                         std::to_string(n) + " = " + std::to_string(expected));
    }
    double sq = 0.0;
    for (const Complex& a : amps) {
        sq += std::norm(a);
    }
    const double norm = std::sqrt(sq);
    if (std::abs(norm - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "amplitude file norm " << norm << " deviates from 1; renormalized";
        warnings.push_back(msg.str());
    }
    return StateVector::from_amplitudes(std::move(amps), true);
}

StateVector random_state(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (Complex& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = Complex(re, im);
    }
    return StateVector::from_amplitudes(std::move(amps), true);
}

void ExperimentConfig::validate() const {
    if (n < 1) {
        throw InputError("--n must be at least 1");
    }
    if (trotter_steps < 1) {
        throw InputError("--trotter-steps must be at least 1");
    }
    if (shots == 0 && mode != EvolutionMode::kExact) {
        throw InputError("--shots 0 (exact probabilities only) requires --mode exact");
    }
    if (state == "hadamard-x13" && n < 4) {
        throw InputError("preset hadamard-x13 needs n >= 4");
    }
    if (is_bitstring(state) && state.size() != static_cast<std::size_t>(n)) {
        throw InputError("bitstring state '" + state + "' has length " + std::to_string(state.size()) +
                         ", expected " + std::to_string(n));
    }
}

StateVector prepare_initial_state(const ExperimentConfig& config, std::vector<std::string>& warnings) {
    if (config.state == "hadamard") {
        return hadamard_state(config.n);
    }
    if (config.state == "hadamard-x13") {
        return hadamard_x13_state(config.n);
    }
    if (is_bitstring(config.state)) {
        return StateVector::basis(config.n, config.state);
    }
    return load_amplitude_file(config.state, config.n, warnings);
}

ResultDocument run_experiment(const ExperimentConfig& config) {
    config.validate();
    ResultDocument doc;
    doc.config = config;
    doc.timestamp = utc_timestamp();
    const StateVector state = prepare_initial_state(config, doc.warnings);
    const FilterOptions options{config.mode, config.trotter_steps, config.coupling_bound};

    if (config.method == Method::kC) {
        doc.layout = method_c_layout(config.n, Method::kC);
        for (const FilterOutcome& outcome : method_c_distribution(state, options)) {
            doc.outcomes.push_back(row_from(outcome, doc.layout));
        }
        if (config.shots > 0) {
            for (OutcomeRow& row : doc.outcomes) {
                row.count = 0;
            }
            for (const auto& [path, hits] : method_c_histogram(state, config.shots, config.seed, options)) {
                auto it = std::find_if(doc.outcomes.begin(), doc.outcomes.end(),
                                       [&](const OutcomeRow& r) { return r.path == path; });
                if (it == doc.outcomes.end()) {
                    FilterOutcome stray;
                    stray.path = path;
                    doc.outcomes.push_back(row_from(stray, doc.layout));
                    it = std::prev(doc.outcomes.end());
                }
                it->count = hits;
            }
        }
        return doc;
    }

    CircuitRun run = [&] {
        switch (config.method) {
            case Method::kA:
                return run_method_a_circuit(state, options);
            case Method::kBPrefixSpin:
            case Method::kBCoupling:
                return run_method_b_circuit(state, config.method, options);
            default:
                return run_method_c_deferred_circuit(state, options);
        }
    }();
    doc.layout = run.layout;
    std::vector<FilterOutcome> outcomes = enumerate_outcomes(run, config.mode);
    if (config.shots > 0) {
        std::map<std::uint64_t, std::uint64_t> counts = sample_outcomes(run, config.shots, config.seed);
        for (const auto& [pattern, hits] : counts) {
            const bool known = std::any_of(outcomes.begin(), outcomes.end(),
                                           [&](const FilterOutcome& o) { return o.pattern == pattern; });
            if (!known) {
                FilterOutcome stray;
                stray.pattern = pattern;
                const auto values = run.layout.split(pattern);
                for (std::size_t k = 0; k < values.size(); ++k) {
                    const Register& reg = run.layout.registers[k];
                    stray.raw_bits.push_back({reg.name, format_bits(values[k], static_cast<int>(reg.qubits.size()))});
                }
                outcomes.push_back(std::move(stray));
            }
        }
        for (const FilterOutcome& o : outcomes) {
            OutcomeRow row = row_from(o, doc.layout);
            const auto it = counts.find(o.pattern);
            row.count = it == counts.end() ? 0 : it->second;
            doc.outcomes.push_back(std::move(row));
        }
    } else {
        for (const FilterOutcome& o : outcomes) {
            doc.outcomes.push_back(row_from(o, doc.layout));
        }
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Random-number demo

double RngDemoResult::sample_mean() const {
    double sum = 0.0;
    for (int k : samples) {
        sum += static_cast<double>(k) / n;
    }
    return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

double RngDemoResult::sample_variance() const {
    if (samples.size() < 2) {
        return 0.0;
    }
    const double mean = sample_mean();
    double sq = 0.0;
    for (int k : samples) {
        const double d = static_cast<double>(k) / n - mean;
        sq += d * d;
    }
    return sq / static_cast<double>(samples.size() - 1);
}

RngDemoResult rng_demo(int n, std::uint64_t shots, std::uint64_t seed) {
    if (n < 1) {
        throw InputError("rng-demo needs n >= 1");
    }
    if (shots == 0) {
        throw InputError("rng-demo needs at least one shot");
    }
    RngDemoResult result;
    result.n = n;
    result.register_size = min_ancillas(RegisterKind::kAzimuthal, n);

    std::vector<double> readout;
    {
        StateVector full = hadamard_state(n).extended(result.register_size);
        std::vector<int> reg;
        std::vector<int> system;
        for (int q = 0; q < n; ++q) {
            system.push_back(q);
        }
        for (int b = 0; b < result.register_size; ++b) {
            reg.push_back(n + b);
        }
        run_qpe(full, reg, AzimuthalPhase(system, result.register_size));
        readout = register_probabilities(full, reg);
    }
    result.probabilities.assign(readout.begin(), readout.begin() + n + 1);

    Rng rng(seed);
    result.samples.reserve(shots);
    for (std::uint64_t s = 0; s < shots; ++s) {
        result.samples.push_back(static_cast<int>(sample_index(readout, rng)));
    }
    return result;
}

std::string rng_samples_csv(const RngDemoResult& result) {
    std::ostringstream out;
    out.precision(12);
    out << "shot,k,x\n";
    for (std::size_t s = 0; s < result.samples.size(); ++s) {
        const int k = result.samples[s];
        out << s << ',' << k << ',' << static_cast<double>(k) / result.n << '\n';
    }
    return out.str();
}

}  // namespace tqsf
