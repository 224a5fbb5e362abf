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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tqsf/errors.h"
#include "tqsf/experiment.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitCapacity = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw tqsf::InputError("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw tqsf::InputError("failed writing '" + path + "'");
    }
}

tqsf::EvolutionMode parse_mode(const std::string& text) {
    if (text == "exact") {
        return tqsf::EvolutionMode::kExact;
    }
    if (text == "trotter") {
        return tqsf::EvolutionMode::kTrotter;
    }
    throw tqsf::InputError("--mode must be exact or trotter, got '" + text + "'");
}

tqsf::CouplingRegisterBound parse_bound(const std::string& text) {
    if (text == "injective") {
        return tqsf::CouplingRegisterBound::kInjective;
    }
    if (text == "literal") {
        return tqsf::CouplingRegisterBound::kLiteral;
    }
    throw tqsf::InputError("--coupling-bound must be injective or literal, got '" + text + "'");
}

void print_outcomes(const tqsf::ResultDocument& doc) {
    std::printf("%-34s %14s %10s\n", "label", "probability", "count");
    for (const auto& row : doc.outcomes) {
        std::string count = row.count ? std::to_string(*row.count) : "-";
        std::printf("%-34s %14.10f %10s\n", row.label.c_str(), row.probability, count.c_str());
    }
}

struct RunArgs {
    tqsf::ExperimentConfig config;
    std::string method = "a";
    std::string mode = "exact";
    std::string bound = "injective";
    std::string out;
    std::string csv;
    std::string plot;
    bool quiet = false;
};

int run_command(RunArgs& args) {
    args.config.method = tqsf::parse_method(args.method);
    args.config.mode = parse_mode(args.mode);
    args.config.coupling_bound = parse_bound(args.bound);
    const tqsf::ResultDocument doc = tqsf::run_experiment(args.config);
    for (const auto& w : doc.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    const std::string json = tqsf::to_json(doc).dump(2) + "\n";
    if (args.out.empty()) {
        std::cout << json;
    } else {
        write_file(args.out, json);
        if (!args.quiet) {
            print_outcomes(doc);
        }
    }
    if (!args.csv.empty()) {
        write_file(args.csv, tqsf::to_csv(doc));
    }
    if (!args.plot.empty()) {
        write_file(args.plot, tqsf::to_svg(doc));
    }
    return 0;
}

int rng_demo_command(int n, std::uint64_t shots, std::uint64_t seed, const std::string& out) {
    const tqsf::RngDemoResult result = tqsf::rng_demo(n, shots, seed);
    if (!out.empty()) {
        write_file(out, tqsf::rng_samples_csv(result));
    }
    std::printf("n=%d register=%d shots=%llu seed=%llu\n", n, result.register_size,
                static_cast<unsigned long long>(shots), static_cast<unsigned long long>(seed));
    std::map<int, std::uint64_t> counts;
    for (int k : result.samples) {
        ++counts[k];
    }
    std::printf("%4s %10s %14s %14s\n", "k", "x", "p_k", "frequency");
    for (int k = 0; k <= n; ++k) {
        const double freq = static_cast<double>(counts[k]) / static_cast<double>(shots);
        std::printf("%4d %10.6f %14.10f %14.10f\n", k, static_cast<double>(k) / n,
                    result.probabilities[static_cast<std::size_t>(k)], freq);
    }
    std::printf("mean %.8f (expected 0.5)\nvariance %.8f (expected %.8f)\n", result.sample_mean(),
                result.sample_variance(), 1.0 / (4.0 * n));
    return 0;
}

int verify_command(const tqsf::VerifyOptions& options, const std::string& out) {
    const auto checks = tqsf::run_verify(options);
    const std::string json = tqsf::verify_to_json(checks).dump(2) + "\n";
    if (out.empty()) {
        std::cout << json;
    } else {
        write_file(out, json);
    }
    int failed = 0;
    for (const auto& c : checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " n=" << c.n << ": " << c.detail << "\n";
        failed += c.passed ? 0 : 1;
    }
    if (failed > 0) {
        std::cerr << failed << " check(s) failed\n";
        return kExitFailure;
    }
    return 0;
}

int layout_command(int n, const std::string& method, const std::string& bound, bool json) {
    const tqsf::RegisterLayout layout = tqsf::make_layout(n, tqsf::parse_method(method), parse_bound(bound));
    if (json) {
        std::cout << tqsf::layout_to_json(layout).dump(2) << "\n";
    } else {
        std::cout << tqsf::layout_to_text(layout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total-spin filtering on a statevector simulator"};
    app.set_version_flag("--version", std::string(tqsf::kToolVersion));
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Filter an initial state and report the outcome distribution");
    run_cmd->add_option("--n", run.config.n, "Number of system qubits")->capture_default_str();
    run_cmd->add_option("--state", run.config.state,
                        "hadamard, hadamard-x13, an n-character bitstring, or an amplitude file")
        ->capture_default_str();
    run_cmd->add_option("--method", run.method, "a, b-s2j, b-hj, c, c-deferred")->capture_default_str();
    run_cmd->add_option("--mode", run.mode, "exact or trotter")->capture_default_str();
    run_cmd->add_option("--trotter-steps", run.config.trotter_steps, "Trotter steps per unit power")
        ->capture_default_str();
    run_cmd->add_option("--shots", run.config.shots, "Sampled shots (0 = exact probabilities only)")
        ->capture_default_str();
    run_cmd->add_option("--seed", run.config.seed, "Sampling seed")->capture_default_str();
    run_cmd->add_option("--coupling-bound", run.bound, "H register sizing: injective or literal")
        ->capture_default_str();
    run_cmd->add_option("--out", run.out, "JSON result path (stdout when omitted)");
    run_cmd->add_option("--csv", run.csv, "CSV histogram path");
    run_cmd->add_option("--plot", run.plot, "SVG bar chart path");
    run_cmd->add_flag("--quiet", run.quiet, "Do not print the outcome table");

    int demo_n = 4;
    std::uint64_t demo_shots = 100000;
    std::uint64_t demo_seed = tqsf::kDefaultSeed;
    std::string demo_out;
    auto* demo_cmd = app.add_subcommand("rng-demo", "Sample x = k/n from the azimuthal register of |+>^n");
    demo_cmd->add_option("--n", demo_n, "Number of system qubits")->capture_default_str();
    demo_cmd->add_option("--shots", demo_shots, "Number of samples")->capture_default_str();
    demo_cmd->add_option("--seed", demo_seed, "Sampling seed")->capture_default_str();
    demo_cmd->add_option("--out", demo_out, "CSV sample file");

    tqsf::VerifyOptions verify;
    std::string verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check every filter against the eigendecomposition oracle");
    verify_cmd->add_option("--n-max", verify.n_max, "Largest n to check (2..6)")->capture_default_str();
    verify_cmd->add_option("--states", verify.random_states, "Random states per n")->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "Seed for the random states")->capture_default_str();
    verify_cmd->add_option("--out", verify_out, "JSON report path (stdout when omitted)");

    int layout_n = 4;
    std::string layout_method = "a";
    std::string layout_bound = "injective";
    bool layout_json = false;
    auto* layout_cmd = app.add_subcommand("layout", "Print the register layout for a method");
    layout_cmd->add_option("--n", layout_n, "Number of system qubits")->capture_default_str();
    layout_cmd->add_option("--method", layout_method, "a, b-s2j, b-hj, c, c-deferred")->capture_default_str();
    layout_cmd->add_option("--coupling-bound", layout_bound, "H register sizing: injective or literal")
        ->capture_default_str();
    layout_cmd->add_flag("--json", layout_json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (*run_cmd) {
            return run_command(run);
        }
        if (*demo_cmd) {
            return rng_demo_command(demo_n, demo_shots, demo_seed, demo_out);
        }
        if (*verify_cmd) {
            return verify_command(verify, verify_out);
        }
        return layout_command(layout_n, layout_method, layout_bound, layout_json);
    } catch (const tqsf::CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const tqsf::InputError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const tqsf::ConfigurationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
