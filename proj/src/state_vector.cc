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

#include "tqsf/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tqsf/errors.h"

namespace tqsf {

namespace {

constexpr double kUnitaryTolerance = 1e-12;
constexpr double kNormTolerance = 1e-12;
constexpr double kSelectableFloor = 1e-15;

void check_qubit_count(int num_qubits) {
    if (num_qubits < 0) {
        throw InputError("qubit count must be nonnegative");
    }
    if (num_qubits > kMaxQubits) {
        throw CapacityError("state of " + std::to_string(num_qubits) + " qubits exceeds the " +
                            std::to_string(kMaxQubits) + "-qubit limit");
    }
}

// Spreads the bits of `x` so that every position in `fixed` (ascending) reads zero.
std::uint64_t deposit(std::uint64_t x, std::span<const int> fixed) {
    for (int p : fixed) {
        std::uint64_t low = x & ((std::uint64_t{1} << p) - 1);
        x = ((x >> p) << (p + 1)) | low;
    }
    return x;
}

void check_distinct_in_range(std::span<const int> qubits, int num_qubits, const char* what) {
    for (std::size_t a = 0; a < qubits.size(); ++a) {
        if (qubits[a] < 0 || qubits[a] >= num_qubits) {
            throw InputError(std::string(what) + " qubit " + std::to_string(qubits[a]) + " out of range [0, " +
                             std::to_string(num_qubits) + ")");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (qubits[a] == qubits[b]) {
                throw InputError(std::string(what) + " qubit " + std::to_string(qubits[a]) + " repeated");
            }
        }
    }
}

std::uint64_t pattern_of(std::uint64_t index, std::span<const int> qubits) {
    std::uint64_t pattern = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
        pattern |= ((index >> qubits[b]) & 1) << b;
    }
    return pattern;
}

}  // namespace

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string format_bits(std::uint64_t value, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b) {
        if ((value >> b) & 1) {
            out[static_cast<std::size_t>(width - 1 - b)] = '1';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gate

Gate::Gate(Eigen::MatrixXcd matrix, std::vector<int> targets) : matrix_(std::move(matrix)), targets_(std::move(targets)) {
    if (targets_.size() >= 63) {
        throw InputError("gate acts on too many qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << targets_.size();
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw InputError("gate matrix dimension does not match 2^(number of targets)");
    }
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        if (targets_[a] < 0) {
            throw InputError("negative target qubit");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (targets_[a] == targets_[b]) {
                throw InputError("gate targets must be distinct");
            }
        }
    }
    const double defect = (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTolerance) {
        throw InputError("gate matrix is not unitary (max |U^dag U - I| = " + std::to_string(defect) + ")");
    }
}

Gate Gate::hadamard(int qubit) {
    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::MatrixXcd m(2, 2);
    m << h, h, h, -h;
    return Gate(std::move(m), {qubit});
}

Gate Gate::pauli_x(int qubit) {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return Gate(std::move(m), {qubit});
}

Gate Gate::phase(int qubit, double theta) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(1, 1) = std::polar(1.0, theta);
    return Gate(std::move(m), {qubit});
}

Gate Gate::swap(int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return Gate(std::move(m), {a, b});
}

Gate Gate::adjoint() const { return Gate(matrix_.adjoint(), targets_); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int num_qubits, std::string_view bitstring) {
    check_qubit_count(num_qubits);
    if (bitstring.size() != static_cast<std::size_t>(num_qubits)) {
        throw InputError("bitstring length " + std::to_string(bitstring.size()) + " does not match " +
                         std::to_string(num_qubits) + " qubits");
    }
    std::uint64_t index = 0;
    for (char c : bitstring) {
        if (c != '0' && c != '1') {
            throw InputError("bitstring may only contain '0' and '1'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    StateVector state(num_qubits);
    state.amplitudes_[0] = 0.0;
    state.amplitudes_[index] = 1.0;
    return state;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, bool normalize) {
    const std::size_t size = amplitudes.size();
    if (size == 0 || (size & (size - 1)) != 0) {
        throw InputError("amplitude count must be a power of two");
    }
    const int num_qubits = std::countr_zero(size);
    check_qubit_count(num_qubits);
    double sq = 0.0;
    for (const Complex& a : amplitudes) {
        sq += std::norm(a);
    }
    const double norm = std::sqrt(sq);
    if (normalize) {
        if (norm < kSelectableFloor) {
            throw InputError("cannot normalize a zero vector");
        }
        for (Complex& a : amplitudes) {
            a /= norm;
        }
    } else if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InputError("amplitudes are not normalized (norm " + std::to_string(norm) + ")");
    }
    return StateVector(num_qubits, std::move(amplitudes));
}

double StateVector::norm() const {
    double sq = 0.0;
    for (const Complex& a : amplitudes_) {
        sq += std::norm(a);
    }
    return std::sqrt(sq);
}

void StateVector::apply(const Gate& gate) { apply_controlled({}, {}, gate); }

void StateVector::apply_controlled(std::span<const int> controls, std::span<const int> control_values,
                                   const Gate& gate) {
    const auto& targets = gate.targets();
    check_distinct_in_range(targets, num_qubits_, "target");
    check_distinct_in_range(controls, num_qubits_, "control");
    if (controls.size() != control_values.size()) {
        throw InputError("one control value is required per control qubit");
    }
    for (int c : controls) {
        if (std::find(targets.begin(), targets.end(), c) != targets.end()) {
            throw InputError("control qubit " + std::to_string(c) + " is also a target");
        }
    }

    std::vector<int> fixed(targets.begin(), targets.end());
    fixed.insert(fixed.end(), controls.begin(), controls.end());
    std::sort(fixed.begin(), fixed.end());

    std::uint64_t control_mask = 0;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (control_values[i] != 0 && control_values[i] != 1) {
            throw InputError("control values must be 0 or 1");
        }
        control_mask |= static_cast<std::uint64_t>(control_values[i]) << controls[i];
    }

    const std::size_t dim = std::size_t{1} << targets.size();
    std::vector<std::uint64_t> offsets(dim, 0);
    for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t b = 0; b < targets.size(); ++b) {
            if ((s >> b) & 1) {
                offsets[s] |= std::uint64_t{1} << targets[b];
            }
        }
    }

    const Eigen::MatrixXcd& m = gate.matrix();
    const std::uint64_t blocks = std::uint64_t{1} << (num_qubits_ - static_cast<int>(fixed.size()));
    Complex* amp = amplitudes_.data();

    if (dim == 2) {
        const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        for (std::uint64_t block = 0; block < blocks; ++block) {
            const std::uint64_t i0 = deposit(block, fixed) | control_mask;
            const std::uint64_t i1 = i0 | offsets[1];
            const Complex a = amp[i0], b = amp[i1];
            amp[i0] = m00 * a + m01 * b;
            amp[i1] = m10 * a + m11 * b;
        }
        return;
    }

    Eigen::VectorXcd in(static_cast<Eigen::Index>(dim));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(dim));
    for (std::uint64_t block = 0; block < blocks; ++block) {
        const std::uint64_t base = deposit(block, fixed) | control_mask;
        for (std::size_t s = 0; s < dim; ++s) {
            in[static_cast<Eigen::Index>(s)] = amp[base | offsets[s]];
        }
        out.noalias() = m * in;
        for (std::size_t s = 0; s < dim; ++s) {
            amp[base | offsets[s]] = out[static_cast<Eigen::Index>(s)];
        }
    }
}

double StateVector::collapse(std::span<const int> qubits, std::uint64_t bits) {
    check_distinct_in_range(qubits, num_qubits_, "measured");
    double weight = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (pattern_of(i, qubits) == bits) {
            weight += std::norm(amplitudes_[i]);
        }
    }
    if (weight < kSelectableFloor) {
        throw Error("collapse onto a branch of vanishing probability");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (pattern_of(i, qubits) == bits) {
            amplitudes_[i] *= scale;
        } else {
            amplitudes_[i] = 0.0;
        }
    }
    return weight;
}

StateVector StateVector::extended(int extra) const {
    check_qubit_count(num_qubits_ + extra);
    std::vector<Complex> amps(std::size_t{1} << (num_qubits_ + extra), Complex{0.0, 0.0});
    std::copy(amplitudes_.begin(), amplitudes_.end(), amps.begin());
    return StateVector(num_qubits_ + extra, std::move(amps));
}

// ---------------------------------------------------------------------------
// Measurement

std::vector<double> register_probabilities(const StateVector& state, std::span<const int> qubits) {
    check_distinct_in_range(qubits, state.num_qubits(), "measured");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        probs[pattern_of(i, qubits)] += std::norm(amps[i]);
    }
    return probs;
}

std::size_t sample_index(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) {
        if (w >= kSelectableFloor) {
            total += w;
        }
    }
    if (total <= 0.0) {
        throw Error("no selectable outcome: distribution has vanishing norm");
    }
    const double target = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < kSelectableFloor) {
            continue;
        }
        acc += weights[i];
        last = i;
        if (target < acc) {
            return i;
        }
    }
    return last;
}

MeasurementResult measure(StateVector state, std::span<const int> qubits, Rng& rng) {
    const std::vector<double> probs = register_probabilities(state, qubits);
    const std::uint64_t pattern = sample_index(probs, rng);
    const double p = state.collapse(qubits, pattern);
    std::map<int, int> bits;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
        bits[qubits[b]] = static_cast<int>((pattern >> b) & 1);
    }
    return MeasurementResult{std::move(bits), p, std::move(state)};
}

std::map<std::string, double> outcome_distribution(const StateVector& state, std::span<const int> qubits) {
    const std::vector<double> probs = register_probabilities(state, qubits);
    std::map<std::string, double> out;
    const int width = static_cast<int>(qubits.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > kProbabilityFloor) {
            out.emplace(format_bits(i, width), probs[i]);
        }
    }
    return out;
}

std::map<std::uint64_t, std::uint64_t> sample_pattern_counts(const StateVector& state, std::span<const int> qubits,
                                                             std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw InputError("shots must be at least 1");
    }
    const std::vector<double> probs = register_probabilities(state, qubits);
    std::vector<double> cdf;
    std::vector<std::uint64_t> index;
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] >= kSelectableFloor) {
            acc += probs[i];
            cdf.push_back(acc);
            index.push_back(i);
        }
    }
    if (cdf.empty()) {
        throw Error("no selectable outcome: distribution has vanishing norm");
    }
    std::vector<std::uint64_t> hits(index.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        ++hits[k];
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (hits[k] > 0) {
            counts.emplace(index[k], hits[k]);
        }
    }
    return counts;
}

std::map<std::string, std::uint64_t> sample_counts(const StateVector& state, std::span<const int> qubits,
                                                   std::uint64_t shots, std::uint64_t seed) {
    std::map<std::string, std::uint64_t> counts;
    const int width = static_cast<int>(qubits.size());
    for (const auto& [pattern, hits] : sample_pattern_counts(state, qubits, shots, seed)) {
        counts.emplace(format_bits(pattern, width), hits);
    }
    return counts;
}

std::vector<Branch> enumerate_branches(const StateVector& state, std::span<const int> qubits) {
    const std::vector<double> probs = register_probabilities(state, qubits);
    const int n = state.num_qubits();
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
            rest.push_back(q);
        }
    }
    std::vector<int> measured_sorted(qubits.begin(), qubits.end());
    std::sort(measured_sorted.begin(), measured_sorted.end());

    std::vector<Branch> out;
    const auto amps = state.amplitudes();
    const std::uint64_t rest_dim = std::uint64_t{1} << rest.size();
    for (std::uint64_t pattern = 0; pattern < probs.size(); ++pattern) {
        if (probs[pattern] <= kProbabilityFloor) {
            continue;
        }
        std::uint64_t fixed_bits = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            fixed_bits |= ((pattern >> b) & 1) << qubits[b];
        }
        std::vector<Complex> sub(rest_dim);
        const double scale = 1.0 / std::sqrt(probs[pattern]);
        for (std::uint64_t r = 0; r < rest_dim; ++r) {
            sub[r] = amps[deposit(r, measured_sorted) | fixed_bits] * scale;
        }
        out.push_back(Branch{pattern, probs[pattern], StateVector::from_amplitudes(std::move(sub), true)});
    }
    return out;
}

}  // namespace tqsf
