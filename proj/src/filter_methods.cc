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

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <utility>

#include "tqsf/errors.h"
#include "tqsf/qpe_filter.h"

namespace tqsf {

namespace {

// Smallest r >= 1 with 2^r > largest.
int bits_exceeding(std::uint64_t largest) { return std::max(1, static_cast<int>(std::bit_width(largest))); }

void add_register(RegisterLayout& layout, std::string name, RegisterRole role, int prefix, int size) {
    int next = layout.total_qubits();
    Register reg{std::move(name), role, prefix, {}};
    for (int b = 0; b < size; ++b) {
        reg.qubits.push_back(next++);
    }
    layout.registers.push_back(std::move(reg));
}

RegisterLayout system_only(int n, Method method) {
    if (n < 1) {
        throw InputError("at least one system qubit is required");
    }
    RegisterLayout layout;
    layout.method = method;
    layout.n = n;
    for (int q = 0; q < n; ++q) {
        layout.system.push_back(q);
    }
    return layout;
}

// S^2_[j] for even j, S^2_[j] - 3/4 for odd j, scaled so that the phase
// integers are S(S+1)/2 or (S-1/2)(S+3/2).
PhaseUnitarySpec prefix_spin_spec(int j, int n, int register_size, const FilterOptions& options) {
    TranspositionSum s2 = prefix_spin_squared(j, n);
    if (j % 2 == 0) {
        return {std::move(s2), std::ldexp(1.0, -(register_size + 1)), options.mode, options.trotter_steps};
    }
    TranspositionSum shifted(n, s2.identity_coefficient() - 0.75, s2.terms());
    return {std::move(shifted), std::ldexp(1.0, -register_size), options.mode, options.trotter_steps};
}

PhaseUnitarySpec coupling_spec(int j, int n, int register_size, const FilterOptions& options) {
    TranspositionSum h(n, 1.0, coupling_operator(j, n).terms());
    return {std::move(h), std::ldexp(1.0, -register_size), options.mode, options.trotter_steps};
}

void check_state(const StateVector& state) {
    if (state.num_qubits() < 1) {
        throw InputError("filters need at least one system qubit");
    }
}

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Methods and layouts

std::string_view method_name(Method method) {
    switch (method) {
        case Method::kA:
            return "a";
        case Method::kBPrefixSpin:
            return "b-s2j";
        case Method::kBCoupling:
            return "b-hj";
        case Method::kC:
            return "c";
        case Method::kCDeferred:
            return "c-deferred";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    const std::string t = lowercase(text);
    for (Method m : {Method::kA, Method::kBPrefixSpin, Method::kBCoupling, Method::kC, Method::kCDeferred}) {
        if (t == method_name(m)) {
            return m;
        }
    }
    throw InputError("unknown method '" + std::string(text) + "' (expected a, b-s2j, b-hj, c or c-deferred)");
}

int RegisterLayout::total_qubits() const {
    int total = static_cast<int>(system.size());
    for (const auto& r : registers) {
        total += static_cast<int>(r.qubits.size());
    }
    return total;
}

std::vector<int> RegisterLayout::ancillas() const {
    std::vector<int> out;
    for (const auto& r : registers) {
        out.insert(out.end(), r.qubits.begin(), r.qubits.end());
    }
    return out;
}

std::vector<std::uint64_t> RegisterLayout::split(std::uint64_t pattern) const {
    std::vector<std::uint64_t> values;
    int shift = 0;
    for (const auto& r : registers) {
        const int size = static_cast<int>(r.qubits.size());
        values.push_back((pattern >> shift) & ((std::uint64_t{1} << size) - 1));
        shift += size;
    }
    return values;
}

std::string RegisterLayout::joint_bitstring(std::span<const std::uint64_t> values) const {
    std::string out;
    for (std::size_t k = 0; k < registers.size(); ++k) {
        if (k > 0) {
            out += ' ';
        }
        out += format_bits(values[k], static_cast<int>(registers[k].qubits.size()));
    }
    return out;
}

RegisterLayout method_a_layout(int n) {
    RegisterLayout layout = system_only(n, Method::kA);
    add_register(layout, "z", RegisterRole::kAzimuthal, 0, min_ancillas(RegisterKind::kAzimuthal, n));
    add_register(layout, "S", RegisterRole::kTotalSpin, 0, min_spin_ancillas(n));
    return layout;
}

RegisterLayout method_b_layout(int n, Method variant, CouplingRegisterBound bound) {
    if (variant != Method::kBPrefixSpin && variant != Method::kBCoupling) {
        throw InputError("method_b_layout needs a b-s2j or b-hj variant");
    }
    RegisterLayout layout = system_only(n, variant);
    add_register(layout, "z", RegisterRole::kAzimuthal, 0, min_ancillas(RegisterKind::kAzimuthal, n));
    for (int j = 2; j <= n; ++j) {
        if (variant == Method::kBPrefixSpin) {
            add_register(layout, "S[" + std::to_string(j) + "]", RegisterRole::kPrefixSpin, j, min_spin_ancillas(j));
        } else {
            const int size = bound == CouplingRegisterBound::kInjective
                                 ? min_ancillas(RegisterKind::kCoupling, j)
                                 : bits_exceeding(static_cast<std::uint64_t>(j - 1));
            add_register(layout, "H[" + std::to_string(j) + "]", RegisterRole::kCoupling, j, size);
        }
    }
    return layout;
}

RegisterLayout method_c_layout(int n, Method variant) {
    if (variant != Method::kC && variant != Method::kCDeferred) {
        throw InputError("method_c_layout needs a c or c-deferred variant");
    }
    RegisterLayout layout = system_only(n, variant);
    for (int j = 2; j <= n; ++j) {
        add_register(layout, "a[" + std::to_string(j) + "]", RegisterRole::kStep, j, 1);
    }
    return layout;
}

RegisterLayout make_layout(int n, Method method, CouplingRegisterBound bound) {
    switch (method) {
        case Method::kA:
            return method_a_layout(n);
        case Method::kBPrefixSpin:
        case Method::kBCoupling:
            return method_b_layout(n, method, bound);
        case Method::kC:
        case Method::kCDeferred:
            return method_c_layout(n, method);
    }
    throw InputError("unknown method");
}

// ---------------------------------------------------------------------------
// Labels

PathLabel PathLabel::from_step_bits(std::string_view bits) {
    PathLabel path{{1}};
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InputError("path bits may only contain '0' and '1'");
        }
        const int next = path.two_s_sequence.back() + (c == '1' ? 1 : -1);
        if (next < 0) {
            throw InputError("path '" + std::string(bits) + "' lowers the spin below zero");
        }
        path.two_s_sequence.push_back(next);
    }
    return path;
}

std::string PathLabel::step_bits() const {
    std::string out;
    for (std::size_t k = 1; k < two_s_sequence.size(); ++k) {
        out += two_s_sequence[k] > two_s_sequence[k - 1] ? '1' : '0';
    }
    return out;
}

bool PathLabel::valid() const {
    if (two_s_sequence.empty() || two_s_sequence.front() != 1) {
        return false;
    }
    for (std::size_t k = 1; k < two_s_sequence.size(); ++k) {
        if (two_s_sequence[k] < 0 || std::abs(two_s_sequence[k] - two_s_sequence[k - 1]) != 1) {
            return false;
        }
    }
    return true;
}

std::string path_bits_right_to_left(const PathLabel& path) {
    std::string bits = path.step_bits();
    std::reverse(bits.begin(), bits.end());
    for (char& c : bits) {
        c = c == '1' ? '0' : '1';
    }
    return bits;
}

PathLabel path_from_coupling_eigenvalues(std::span<const int> h) {
    PathLabel path{{1}};
    for (std::size_t k = 0; k < h.size(); ++k) {
        const int j = static_cast<int>(k) + 2;
        const int prev = path.two_s_sequence.back();
        if (2 * h[k] == prev + j - 1) {
            path.two_s_sequence.push_back(prev + 1);
        } else if (prev >= 1 && 2 * h[k] == -prev + j - 3) {
            path.two_s_sequence.push_back(prev - 1);
        } else {
            throw DecodeError("H[" + std::to_string(j) + "] eigenvalue " + std::to_string(h[k]) +
                              " is unreachable from prefix spin " + format_half_integer(prev));
        }
    }
    return path;
}

std::vector<int> coupling_eigenvalues(const PathLabel& path) {
    if (!path.valid()) {
        throw InputError("invalid path");
    }
    std::vector<int> h;
    for (std::size_t k = 1; k < path.two_s_sequence.size(); ++k) {
        const int j = static_cast<int>(k) + 1;
        const int prev = path.two_s_sequence[k - 1];
        const bool up = path.two_s_sequence[k] > prev;
        h.push_back(up ? (prev + j - 1) / 2 : (-prev + j - 3) / 2);
    }
    return h;
}

DecodedLabel decode_outcome(const RegisterLayout& layout, std::span<const std::uint64_t> register_values) {
    if (register_values.size() != layout.registers.size()) {
        throw InputError("one value per register is required");
    }
    const int n = layout.n;
    std::optional<int> two_m;
    std::optional<int> total_two_s;
    std::vector<int> sequence{1};

    for (std::size_t k = 0; k < layout.registers.size(); ++k) {
        const Register& reg = layout.registers[k];
        const std::uint64_t v = register_values[k];
        if (v >= (std::uint64_t{1} << reg.qubits.size())) {
            throw InputError("value " + std::to_string(v) + " does not fit register " + reg.name);
        }
        switch (reg.role) {
            case RegisterRole::kAzimuthal:
                if (v > static_cast<std::uint64_t>(n)) {
                    throw DecodeError("z register reads " + std::to_string(v) + " > n = " + std::to_string(n));
                }
                two_m = azimuthal_two_m(n, static_cast<int>(v));
                break;
            case RegisterRole::kTotalSpin:
                total_two_s = decode_spin(v, n);
                break;
            case RegisterRole::kPrefixSpin:
            case RegisterRole::kCoupling:
            case RegisterRole::kStep: {
                const int j = reg.prefix;
                if (j != static_cast<int>(sequence.size()) + 1) {
                    throw InputError("path registers must appear in ascending j starting at 2");
                }
                const int prev = sequence.back();
                int next = 0;
                if (reg.role == RegisterRole::kPrefixSpin) {
                    next = decode_spin(v, j);
                    if (std::abs(next - prev) != 1) {
                        throw DecodeError(reg.name + " reads spin " + format_half_integer(next) +
                                          ", unreachable from " + format_half_integer(prev));
                    }
                } else if (reg.role == RegisterRole::kCoupling) {
                    const int h = static_cast<int>(v) - 1;
                    if (2 * h == prev + j - 1) {
                        next = prev + 1;
                    } else if (prev >= 1 && 2 * h == -prev + j - 3) {
                        next = prev - 1;
                    } else {
                        throw DecodeError(reg.name + " reads h = " + std::to_string(h) +
                                          ", unreachable from prefix spin " + format_half_integer(prev));
                    }
                } else {
                    if (v == 1) {
                        next = prev + 1;
                    } else if (prev == 0) {
                        throw DecodeError(reg.name + " reads a decrease from prefix spin 0");
                    } else {
                        next = prev - 1;
                    }
                }
                sequence.push_back(next);
                break;
            }
        }
    }

    DecodedLabel out;
    const bool path_method = layout.method != Method::kA;
    if (path_method) {
        out.path = PathLabel{sequence};
        if (static_cast<int>(sequence.size()) != n) {
            throw InputError("layout does not cover every step of the path");
        }
    }
    if (two_m) {
        const int two_s = path_method ? sequence.back() : total_two_s.value_or(-1);
        SpinLabel label{two_s, *two_m};
        if (!label.valid_for(n)) {
            throw DecodeError("decoded label " + label.to_string() + " is not a valid spin state of " +
                              std::to_string(n) + " qubits");
        }
        out.spin = label;
    }
    return out;
}

std::string FilterOutcome::label() const {
    std::string out;
    if (path) {
        out = "path=" + path->step_bits() + ",S=" + format_half_integer(path->final_two_s());
        if (spin) {
            out += ",M=" + format_half_integer(spin->two_m);
        }
        return out;
    }
    if (spin) {
        return spin->to_string();
    }
    return "undecoded";
}

// ---------------------------------------------------------------------------
// Coherent circuits

CircuitRun run_method_a_circuit(const StateVector& state, const FilterOptions& options) {
    check_state(state);
    const int n = state.num_qubits();
    RegisterLayout layout = method_a_layout(n);
    StateVector full = state.extended(layout.total_qubits() - n);

    const Register& z = layout.registers[0];
    const Register& s = layout.registers[1];
    run_qpe(full, z.qubits, AzimuthalPhase(layout.system, static_cast<int>(z.qubits.size())));
    run_qpe(full, s.qubits,
            PhaseUnitary(prefix_spin_spec(n, n, static_cast<int>(s.qubits.size()), options), layout.system));
    return {std::move(layout), std::move(full)};
}

CircuitRun run_method_b_circuit(const StateVector& state, Method variant, const FilterOptions& options) {
    check_state(state);
    const int n = state.num_qubits();
    RegisterLayout layout = method_b_layout(n, variant, options.coupling_bound);
    StateVector full = state.extended(layout.total_qubits() - n);

    for (const Register& reg : layout.registers) {
        const int size = static_cast<int>(reg.qubits.size());
        if (reg.role == RegisterRole::kPrefixSpin) {
            run_qpe(full, reg.qubits, PhaseUnitary(prefix_spin_spec(reg.prefix, n, size, options), layout.system));
        } else if (reg.role == RegisterRole::kCoupling) {
            run_qpe(full, reg.qubits, PhaseUnitary(coupling_spec(reg.prefix, n, size, options), layout.system));
        }
    }
    const Register& z = layout.registers[0];
    run_qpe(full, z.qubits, AzimuthalPhase(layout.system, static_cast<int>(z.qubits.size())));
    return {std::move(layout), std::move(full)};
}

namespace {

struct History {
    std::vector<int> bits;  // readouts of a[2..j-1]
    int two_s = 1;          // prefix spin after those steps
};

// Readout histories the sequential filter can produce before step j. A step
// from spin 0 always increases, so its readout is pinned to 1.
std::vector<History> reachable_histories(int j) {
    std::vector<History> histories{History{}};
    for (int step = 2; step < j; ++step) {
        std::vector<History> next;
        for (const History& h : histories) {
            for (int bit : {0, 1}) {
                if (h.two_s == 0 && bit == 0) {
                    continue;
                }
                History extended = h;
                extended.bits.push_back(bit);
                extended.two_s += bit == 1 ? 1 : -1;
                next.push_back(std::move(extended));
            }
        }
        histories = std::move(next);
    }
    return histories;
}

}  // namespace

CircuitRun run_method_c_deferred_circuit(const StateVector& state, const FilterOptions& options) {
    check_state(state);
    const int n = state.num_qubits();
    RegisterLayout layout = method_c_layout(n, Method::kCDeferred);
    StateVector full = state.extended(layout.total_qubits() - n);

    std::map<std::pair<int, int>, std::unique_ptr<PhaseUnitary>> step_unitaries;
    for (int j = 2; j <= n; ++j) {
        const int ancilla = layout.registers[static_cast<std::size_t>(j - 2)].qubits[0];
        full.apply(Gate::hadamard(ancilla));
        for (const History& h : reachable_histories(j)) {
            std::vector<int> controls{ancilla};
            std::vector<int> values{1};
            for (std::size_t k = 0; k < h.bits.size(); ++k) {
                controls.push_back(layout.registers[k].qubits[0]);
                values.push_back(h.bits[k]);
            }
            if (h.two_s == 0) {
                // From spin 0 the step operator is 1, so V_[j] = -1.
                Eigen::MatrixXcd minus_one(1, 1);
                minus_one(0, 0) = -1.0;
                full.apply_controlled(controls, values, Gate(std::move(minus_one), {}));
                continue;
            }
            auto& v = step_unitaries[{j, h.two_s}];
            if (!v) {
                v = std::make_unique<PhaseUnitary>(
                    PhaseUnitarySpec{step_operator(j, n, h.two_s), 0.5, options.mode, options.trotter_steps},
                    layout.system);
            }
            v->apply_controlled(full, controls, values, 1.0);
        }
        full.apply(Gate::hadamard(ancilla));
    }
    return {std::move(layout), std::move(full)};
}

std::vector<FilterOutcome> enumerate_outcomes(const CircuitRun& run, EvolutionMode mode) {
    std::vector<FilterOutcome> outcomes;
    const std::vector<int> ancillas = run.layout.ancillas();
    for (Branch& branch : enumerate_branches(run.final_state, ancillas)) {
        const std::vector<std::uint64_t> values = run.layout.split(branch.bits);
        FilterOutcome outcome;
        outcome.probability = branch.probability;
        outcome.pattern = branch.bits;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const Register& reg = run.layout.registers[k];
            outcome.raw_bits.push_back({reg.name, format_bits(values[k], static_cast<int>(reg.qubits.size()))});
        }
        try {
            DecodedLabel decoded = decode_outcome(run.layout, values);
            outcome.spin = decoded.spin;
            outcome.path = std::move(decoded.path);
        } catch (const DecodeError&) {
            if (mode == EvolutionMode::kExact) {
                throw;
            }
        }
        outcome.post_state = std::move(branch.remainder);
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

std::map<std::uint64_t, std::uint64_t> sample_outcomes(const CircuitRun& run, std::uint64_t shots,
                                                       std::uint64_t seed) {
    return sample_pattern_counts(run.final_state, run.layout.ancillas(), shots, seed);
}

std::vector<FilterOutcome> method_a(const StateVector& state, const FilterOptions& options) {
    return enumerate_outcomes(run_method_a_circuit(state, options), options.mode);
}

std::vector<FilterOutcome> method_b(const StateVector& state, Method variant, const FilterOptions& options) {
    return enumerate_outcomes(run_method_b_circuit(state, variant, options), options.mode);
}

std::vector<FilterOutcome> method_c_deferred(const StateVector& state, const FilterOptions& options) {
    return enumerate_outcomes(run_method_c_deferred_circuit(state, options), options.mode);
}

}  // namespace tqsf
