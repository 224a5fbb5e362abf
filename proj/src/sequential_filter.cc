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

#include <map>
#include <memory>
#include <utility>

#include "tqsf/errors.h"
#include "tqsf/qpe_filter.h"

namespace tqsf {

namespace {

/// Sequential Hadamard tests with classical feedback, one ancilla per step.
class SequentialFilter {
   public:
    SequentialFilter(int n, const FilterOptions& options)
        : layout_(method_c_layout(n, Method::kC)), options_(options) {}

    const RegisterLayout& layout() const { return layout_; }
    int ancilla(int j) const { return layout_.registers[static_cast<std::size_t>(j - 2)].qubits[0]; }

    /// H, controlled V_[j] built from the known prefix spin, H.
    void prepare_test(StateVector& full, int j, int two_s_prev) {
        const int a = ancilla(j);
        const int control[] = {a};
        const int value[] = {1};
        full.apply(Gate::hadamard(a));
        step_unitary(j, two_s_prev).apply_controlled(full, control, value, 1.0);
        full.apply(Gate::hadamard(a));
    }

    StateVector system_state(const StateVector& full) const {
        std::vector<Branch> branches = enumerate_branches(full, layout_.ancillas());
        if (branches.size() != 1) {
            throw Error("sequential filter left the ancillas entangled with the system");
        }
        return std::move(branches.front().remainder);
    }

   private:
    const PhaseUnitary& step_unitary(int j, int two_s_prev) {
        auto& slot = cache_[{j, two_s_prev}];
        if (!slot) {
            slot = std::make_unique<PhaseUnitary>(
                PhaseUnitarySpec{step_operator(j, layout_.n, two_s_prev), 0.5, options_.mode, options_.trotter_steps},
                layout_.system);
        }
        return *slot;
    }

    RegisterLayout layout_;
    FilterOptions options_;
    std::map<std::pair<int, int>, std::unique_ptr<PhaseUnitary>> cache_;
};

ShotRecord run_shot(SequentialFilter& filter, const StateVector& state, Rng& rng) {
    const int n = state.num_qubits();
    StateVector full = state.extended(filter.layout().total_qubits() - n);
    PathLabel path{{1}};
    double probability = 1.0;
    for (int j = 2; j <= n; ++j) {
        const int two_s = path.two_s_sequence.back();
        if (two_s == 0) {
            path.two_s_sequence.push_back(1);
            continue;
        }
        filter.prepare_test(full, j, two_s);
        const int a = filter.ancilla(j);
        const int measured[] = {a};
        MeasurementResult r = measure(std::move(full), measured, rng);
        full = std::move(r.post_state);
        probability *= r.probability;
        path.two_s_sequence.push_back(two_s + (r.bits.at(a) == 1 ? 1 : -1));
    }
    return ShotRecord{std::move(path), probability, filter.system_state(full)};
}

void check_state(const StateVector& state) {
    if (state.num_qubits() < 1) {
        throw InputError("filters need at least one system qubit");
    }
}

}  // namespace

ShotRecord method_c(const StateVector& state, Rng& rng, const FilterOptions& options) {
    check_state(state);
    SequentialFilter filter(state.num_qubits(), options);
    return run_shot(filter, state, rng);
}

ShotRecord method_c(const StateVector& state, std::uint64_t seed, const FilterOptions& options) {
    Rng rng(seed);
    return method_c(state, rng, options);
}

std::map<PathLabel, std::uint64_t> method_c_histogram(const StateVector& state, std::uint64_t shots,
                                                      std::uint64_t seed, const FilterOptions& options) {
    check_state(state);
    if (shots == 0) {
        throw InputError("shots must be at least 1");
    }
    SequentialFilter filter(state.num_qubits(), options);
    Rng rng(seed);
    std::map<PathLabel, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++counts[run_shot(filter, state, rng).path];
    }
    return counts;
}

std::vector<FilterOutcome> method_c_distribution(const StateVector& state, const FilterOptions& options) {
    check_state(state);
    const int n = state.num_qubits();
    SequentialFilter filter(n, options);

    struct Node {
        StateVector full;
        PathLabel path;
        double probability;
        std::vector<RegisterReading> readings;
    };
    std::vector<Node> frontier;
    frontier.push_back(Node{state.extended(filter.layout().total_qubits() - n), PathLabel{{1}}, 1.0, {}});

    for (int j = 2; j <= n; ++j) {
        const std::string name = "a[" + std::to_string(j) + "]";
        std::vector<Node> next;
        for (Node& node : frontier) {
            const int two_s = node.path.two_s_sequence.back();
            if (two_s == 0) {
                node.path.two_s_sequence.push_back(1);
                node.readings.push_back({name, "-"});
                next.push_back(std::move(node));
                continue;
            }
            filter.prepare_test(node.full, j, two_s);
            const int measured[] = {filter.ancilla(j)};
            const std::vector<double> probs = register_probabilities(node.full, measured);
            for (int bit : {0, 1}) {
                if (probs[static_cast<std::size_t>(bit)] <= kProbabilityFloor) {
                    continue;
                }
                Node child{node.full, node.path, node.probability, node.readings};
                child.probability *= child.full.collapse(measured, static_cast<std::uint64_t>(bit));
                child.path.two_s_sequence.push_back(two_s + (bit == 1 ? 1 : -1));
                child.readings.push_back({name, bit == 1 ? "1" : "0"});
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    std::vector<FilterOutcome> outcomes;
    for (Node& node : frontier) {
        FilterOutcome outcome;
        outcome.path = std::move(node.path);
        outcome.probability = node.probability;
        outcome.post_state = filter.system_state(node.full);
        outcome.raw_bits = std::move(node.readings);
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

}  // namespace tqsf
