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

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "oracles.h"
#include "tqsf/errors.h"
#include "tqsf/experiment.h"

namespace {

using namespace tqsf;
namespace oracle = tqsf::testing;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fixed(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Verdict {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::map<std::string, double> by_label(const std::vector<FilterOutcome>& outcomes) {
    std::map<std::string, double> out;
    for (const auto& o : outcomes) {
        out[o.label()] += o.probability;
    }
    return out;
}

double max_difference(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    double worst = 0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : b) {
        if (!a.contains(k)) {
            worst = std::max(worst, v);
        }
    }
    return worst;
}

bool within_sigma(std::uint64_t hits, std::uint64_t shots, double p, double k) {
    const double n = static_cast<double>(shots);
    const double freq = static_cast<double>(hits) / n;
    if (p <= 0.0) {
        return hits == 0;
    }
    return std::abs(freq - p) <= k * std::sqrt(p * (1 - p) / n);
}

double eigen_residual(const Eigen::MatrixXcd& op, double lambda, const StateVector& psi) {
    const Eigen::VectorXcd v = oracle::to_eigen(psi);
    return (op * v - lambda * v).norm();
}

Verdict binomial_amplitudes() {
    Verdict v;
    const double expected[] = {1, 4, 6, 4, 1};
    auto start = Clock::now();
    const auto exact = method_a(hadamard_state(4));
    const double exact_time = seconds_since(start);
    double worst = 0;
    for (SpinLabel label : spin_labels(4)) {
        double p = 0;
        for (const auto& o : exact) {
            if (o.spin == label) {
                p += o.probability;
            }
        }
        const double want = label.two_s == 4 ? expected[(4 - label.two_m) / 2] / 16 : 0.0;
        worst = std::max(worst, std::abs(p - want));
    }
    v.require(worst < 1e-10, "exact max deviation " + sci(worst) + " (< 1e-10)");
    v.require(exact_time < 1.0, "exact " + fixed(exact_time) + " s (< 1 s)");

    ExperimentConfig config;
    config.shots = 100000;
    start = Clock::now();
    const ResultDocument doc = run_experiment(config);
    const double sampled_time = seconds_since(start);
    bool bins_ok = true;
    std::uint64_t total = 0;
    for (const auto& row : doc.outcomes) {
        total += row.count.value_or(0);
        const double want = row.spin && row.spin->two_s == 4 ? expected[(4 - row.spin->two_m) / 2] / 16 : 0.0;
        bins_ok = bins_ok && within_sigma(row.count.value_or(0), config.shots, want, 3.0);
    }
    v.require(bins_ok && total == config.shots, "1e5 shots within 3 sigma per bin");
    v.require(sampled_time < 10.0, "sampled " + fixed(sampled_time) + " s (< 10 s)");
    return v;
}

Verdict register_sizing() {
    Verdict v;
    const auto j = layout_to_json(make_layout(4, Method::kA));
    int nz = -1;
    int ns = -1;
    for (const auto& reg : j["registers"]) {
        if (reg["name"] == "z") {
            nz = reg["size"];
        }
        if (reg["name"] == "S") {
            ns = reg["size"];
        }
    }
    v.require(nz == 3 && ns == 2, "n_z=" + std::to_string(nz) + ", n_S=" + std::to_string(ns));
    return v;
}

Verdict degeneracy_uplift() {
    Verdict v;
    const StateVector psi = hadamard_x13_state(4);
    for (Method m : {Method::kBPrefixSpin, Method::kBCoupling}) {
        std::map<SpinLabel, int> components;
        double worst = 0;
        for (const auto& o : method_b(psi, m)) {
            ++components[*o.spin];
            worst = std::max(worst,
                             std::abs(o.probability - oracle::path_weight(o.path->two_s_sequence, o.spin->two_m, psi)));
        }
        const bool counts = components[{2, -2}] == 3 && components[{2, 2}] == 3 && components[{0, 0}] == 2;
        v.require(counts, std::string(method_name(m)) + " components (S=1,M=-1)=" +
                              std::to_string(components[{2, -2}]) + " (S=1,M=1)=" +
                              std::to_string(components[{2, 2}]) + " (S=0,M=0)=" + std::to_string(components[{0, 0}]));
        v.require(worst < 1e-8, std::string(method_name(m)) + " vs oracle " + sci(worst));
    }
    return v;
}

Verdict variant_equivalence() {
    Verdict v;
    Rng rng(kDefaultSeed);
    for (int n = 3; n <= 5; ++n) {
        double worst = 0;
        for (int k = 0; k < 50; ++k) {
            const StateVector psi = random_state(n, rng);
            worst = std::max(worst, max_difference(by_label(method_b(psi, Method::kBPrefixSpin)),
                                                   by_label(method_b(psi, Method::kBCoupling))));
        }
        v.require(worst < 1e-10, "n=" + std::to_string(n) + " " + sci(worst));
    }
    return v;
}

Verdict sequential_consistency() {
    Verdict v;
    const StateVector psi = hadamard_x13_state(4);
    const std::uint64_t shots = 100000;
    std::map<int, double> a_marginal;
    for (const auto& o : method_a(psi)) {
        a_marginal[o.spin->two_s] += o.probability;
    }
    std::map<int, std::uint64_t> c_marginal;
    for (const auto& [path, hits] : method_c_histogram(psi, shots, kDefaultSeed)) {
        c_marginal[path.final_two_s()] += hits;
    }
    bool ok = true;
    for (int two_s = 0; two_s <= 4; two_s += 2) {
        ok = ok && within_sigma(c_marginal[two_s], shots, a_marginal[two_s], 3.0);
    }
    v.require(ok, "method c final-S marginal within 3 sigma of method a (1e5 shots)");

    Rng rng(kDefaultSeed + 5);
    for (int n = 2; n <= 4; ++n) {
        double worst = 0;
        std::vector<StateVector> states{hadamard_state(n)};
        if (n == 4) {
            states.push_back(psi);
        }
        for (int k = 0; k < 10; ++k) {
            states.push_back(random_state(n, rng));
        }
        for (const StateVector& s : states) {
            std::map<std::string, double> b;
            for (const auto& o : method_b(s, Method::kBCoupling)) {
                b[o.path->step_bits()] += o.probability;
            }
            std::map<std::string, double> deferred;
            for (const auto& o : method_c_deferred(s)) {
                deferred[o.path->step_bits()] += o.probability;
            }
            worst = std::max(worst, max_difference(b, deferred));
        }
        v.require(worst < 1e-10, "deferred vs b n=" + std::to_string(n) + " " + sci(worst));
    }
    return v;
}

Verdict funnel_property() {
    Verdict v;
    Rng rng(kDefaultSeed + 6);
    double residual = 0;
    double leak = 0;
    for (int n = 2; n <= 5; ++n) {
        const Eigen::MatrixXcd s2 = oracle::spin_squared(n, n);
        const Eigen::MatrixXcd sz = oracle::spin_z(n);
        std::vector<StateVector> states{random_state(n, rng), random_state(n, rng), hadamard_state(n)};
        if (n >= 4) {
            states.push_back(hadamard_x13_state(n));
        }
        for (const StateVector& psi : states) {
            for (Method m : {Method::kA, Method::kBPrefixSpin, Method::kBCoupling}) {
                const auto outcomes = m == Method::kA ? method_a(psi) : method_b(psi, m);
                for (const auto& o : outcomes) {
                    const double s = o.spin->two_s / 2.0;
                    residual = std::max({residual, eigen_residual(s2, s * (s + 1), *o.post_state),
                                         eigen_residual(sz, o.spin->two_m / 2.0, *o.post_state)});
                    const auto again = by_label(m == Method::kA ? method_a(*o.post_state) : method_b(*o.post_state, m));
                    const auto it = again.find(o.label());
                    leak = std::max(leak, 1.0 - (it == again.end() ? 0.0 : it->second));
                }
            }
        }
    }
    v.require(residual < 1e-8, "max eigen-residual " + sci(residual) + " (< 1e-8)");
    v.require(leak <= 1e-10, "max re-filter leak " + sci(leak) + " (<= 1e-10)");
    return v;
}

Verdict oracle_equivalence() {
    Verdict v;
    const auto start = Clock::now();
    Rng rng(kDefaultSeed + 7);
    for (int n = 2; n <= 6; ++n) {
        const SpinDecomposition decomposition(n);
        double worst = 0;
        double worst_total = 0;
        for (int k = 0; k < 200; ++k) {
            const StateVector psi = random_state(n, rng);
            const auto outcomes = method_a(psi);
            double total = 0;
            std::map<SpinLabel, double> probs;
            for (const auto& o : outcomes) {
                probs[*o.spin] += o.probability;
                total += o.probability;
            }
            for (SpinLabel label : spin_labels(n)) {
                worst = std::max(worst, std::abs(probs[label] - decomposition.project(psi, label).weight));
            }
            worst_total = std::max(worst_total, std::abs(total - 1.0));
        }
        v.require(worst < 1e-8 && worst_total < 1e-10,
                  "n=" + std::to_string(n) + " " + sci(worst) + ", total " + sci(worst_total));
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 120.0, fixed(elapsed, 1) + " s (< 120 s)");
    return v;
}

Verdict algebraic_identities() {
    Verdict v;
    double identity = 0;
    double involution = 0;
    for (int n = 2; n <= 6; ++n) {
        const Eigen::Index dim = Eigen::Index{1} << n;
        for (int j = 2; j <= n; ++j) {
            const Eigen::MatrixXcd lhs = oracle::spin_squared(j, n) - oracle::spin_squared(j - 1, n);
            const Eigen::MatrixXcd rhs = (5.0 - 2.0 * j) / 4.0 * Eigen::MatrixXcd::Identity(dim, dim) +
                                         coupling_operator(j, n).to_dense().cast<Complex>();
            identity = std::max(identity, (lhs - rhs).cwiseAbs().maxCoeff());
        }
        for (int b = 1; b < n; ++b) {
            for (int a = 0; a < b; ++a) {
                const Eigen::MatrixXd p = TranspositionSum(n, 0.0, {{a, b, 1.0}}).to_dense();
                involution = std::max(involution, (p * p - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
            }
        }
    }
    v.require(identity < 1e-12, "prefix difference identity " + sci(identity));
    v.require(involution == 0.0, "P^2 = I deviation " + sci(involution));

    double rotation = 0;
    const int n = 4;
    Rng rng(kDefaultSeed + 8);
    const StateVector psi = random_state(n, rng);
    for (double alpha : {0.1, 0.7, 1.9, -2.4}) {
        for (int b = 1; b < n; ++b) {
            for (int a = 0; a < b; ++a) {
                StateVector s = psi;
                apply_swap_rotation(s, alpha, a, b);
                const Eigen::MatrixXcd u = (Complex(0, alpha) * oracle::swap_matrix(a, b, n)).exp();
                rotation = std::max(rotation, (oracle::to_eigen(s) - u * oracle::to_eigen(psi)).cwiseAbs().maxCoeff());
            }
        }
    }
    v.require(rotation < 1e-12, "swap rotation vs dense exponential " + sci(rotation));

    bool coupling_ok = true;
    double step = 0;
    for (int m = 2; m <= 6; ++m) {
        for (int j = 2; j <= m; ++j) {
            for (double lambda : eigen_oracle(coupling_operator(j, m)).eigenvalues) {
                const double r = std::round(lambda);
                coupling_ok = coupling_ok && std::abs(lambda - r) < 1e-10 && r >= -1 && r <= j - 1;
            }
            const ProjectorSet prefix = eigen_oracle(prefix_spin_squared(j - 1, m));
            for (std::size_t level = 0; level < prefix.eigenvalues.size(); ++level) {
                const double lambda = prefix.eigenvalues[level];
                const int two_s = static_cast<int>(std::lround(std::sqrt(4 * lambda + 1) - 1));
                if (two_s == 0) {
                    continue;
                }
                const Eigen::MatrixXd& p = prefix.projectors[level];
                const Eigen::MatrixXd pg = p * step_operator(j, m, two_s).to_dense() * p;
                step = std::max(step, (pg * pg - pg).cwiseAbs().maxCoeff());
            }
        }
    }
    v.require(coupling_ok, "H spectra integral in [-1, j-1]");
    v.require(step < 1e-10, "G spectra in {0,1}, idempotence defect " + sci(step));
    return v;
}

Verdict trotter_convergence() {
    Verdict v;
    Rng rng(kDefaultSeed);
    const StateVector psi = random_state(4, rng);
    const CircuitRun exact = run_method_a_circuit(psi);
    std::vector<double> errors;
    const std::vector<int> steps{8, 16, 32, 64, 128};
    for (int s : steps) {
        FilterOptions options;
        options.mode = EvolutionMode::kTrotter;
        options.trotter_steps = s;
        const CircuitRun run = run_method_a_circuit(psi, options);
        errors.push_back((oracle::to_eigen(run.final_state) - oracle::to_eigen(exact.final_state)).norm());
    }
    std::string list;
    bool decreasing = true;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        list += (k ? ", " : "") + sci(errors[k]);
        if (k > 0) {
            decreasing = decreasing && errors[k] < errors[k - 1];
        }
    }
    v.require(decreasing, "amplitude error strictly decreasing [" + list + "]");
    std::string ratios;
    bool in_band = true;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        if (steps[k] < 32) {
            continue;
        }
        const double r = errors[k] / errors[k - 1];
        in_band = in_band && r >= 0.4 && r <= 0.6;
        ratios += (ratios.empty() ? "" : ", ") + fixed(r);
    }
    v.require(in_band, "doubling ratios [" + ratios + "] in [0.4, 0.6]");
    return v;
}

Verdict rng_demo_moments() {
    Verdict v;
    const auto start = Clock::now();
    const int n = 20;
    const std::uint64_t shots = 1000000;
    const RngDemoResult r = rng_demo(n, shots, kDefaultSeed);
    const double elapsed = seconds_since(start);
    const double target_var = 1.0 / (4.0 * n);
    const double sigma = std::sqrt(target_var / static_cast<double>(shots));
    const double mean = r.sample_mean();
    const double var = r.sample_variance();
    v.require(std::abs(mean - 0.5) <= 3 * sigma, "mean " + fixed(mean, 6) + " within 3 sigma (" + sci(sigma) + ")");
    v.require(std::abs(var - target_var) <= 0.05 * target_var, "variance " + fixed(var, 6) + " within 5% of 1/80");
    v.require(elapsed < 30.0, fixed(elapsed, 1) + " s (< 30 s)");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"binomial amplitudes", binomial_amplitudes},
        {"register sizing", register_sizing},
        {"degeneracy uplift", degeneracy_uplift},
        {"variant equivalence", variant_equivalence},
        {"sequential-method consistency", sequential_consistency},
        {"funnel/eigenstate property", funnel_property},
        {"oracle equivalence", oracle_equivalence},
        {"algebraic identities", algebraic_identities},
        {"trotter convergence", trotter_convergence},
        {"rng demo", rng_demo_moments},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, body] : criteria) {
        ++index;
        Verdict verdict;
        try {
            verdict = body();
        } catch (const std::exception& e) {
            verdict.passed = false;
            verdict.detail = std::string("exception: ") + e.what();
        }
        failed += verdict.passed ? 0 : 1;
        std::printf("%s %2d %s: %s\n", verdict.passed ? "PASS" : "FAIL", index, name.c_str(), verdict.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
