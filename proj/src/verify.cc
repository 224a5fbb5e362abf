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
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "tqsf/errors.h"
#include "tqsf/experiment.h"

namespace tqsf {

namespace {

constexpr double kProbabilityTolerance = 1e-8;
constexpr double kMarginalTolerance = 1e-10;
constexpr double kResidualTolerance = 1e-8;

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

double spin_squared_residual(const StateVector& psi, int two_s) {
    const TranspositionSum s2 = total_spin_squared(psi.num_qubits());
    const std::vector<Complex> applied = s2.apply(psi.amplitudes());
    const double lambda = two_s * (two_s + 2) / 4.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < applied.size(); ++k) {
        sq += std::norm(applied[k] - lambda * psi[k]);
    }
    return std::sqrt(sq);
}

double azimuthal_residual(const StateVector& psi, int two_m) {
    const int n = psi.num_qubits();
    double sq = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double m = azimuthal_two_m(n, std::popcount(k)) / 2.0;
        sq += std::norm((m - two_m / 2.0) * psi[k]);
    }
    return std::sqrt(sq);
}

double prefix_residual(const StateVector& psi, const PathLabel& path) {
    const int n = psi.num_qubits();
    double worst = 0.0;
    for (int j = 2; j <= n; ++j) {
        const std::vector<Complex> applied = prefix_spin_squared(j, n).apply(psi.amplitudes());
        const int two_s = path.two_s_sequence[static_cast<std::size_t>(j - 1)];
        const double lambda = two_s * (two_s + 2) / 4.0;
        double sq = 0.0;
        for (std::size_t k = 0; k < applied.size(); ++k) {
            sq += std::norm(applied[k] - lambda * psi[k]);
        }
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

std::map<std::string, double> by_label(const std::vector<FilterOutcome>& outcomes) {
    std::map<std::string, double> out;
    for (const auto& o : outcomes) {
        out[o.label()] += o.probability;
    }
    return out;
}

double max_difference(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    double worst = 0.0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : b) {
        if (!a.contains(k)) {
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

std::string path_key(const PathLabel& p) { return p.step_bits(); }

class Suite {
   public:
    void check(std::string name, int n, const std::function<std::string(bool&)>& body) {
        VerifyCheck c{std::move(name), n, false, ""};
        try {
            bool ok = true;
            c.detail = body(ok);
            c.passed = ok;
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        checks_.push_back(std::move(c));
    }

    std::vector<VerifyCheck> take() { return std::move(checks_); }

   private:
    std::vector<VerifyCheck> checks_;
};

void algebra_checks(Suite& suite, int n) {
    suite.check("s2-spectrum", n, [&](bool& ok) {
        const ProjectorSet set = eigen_oracle(total_spin_squared(n));
        std::vector<double> expected;
        for (int two_s = n % 2; two_s <= n; two_s += 2) {
            expected.push_back(two_s * (two_s + 2) / 4.0);
        }
        ok = set.eigenvalues.size() == expected.size();
        double worst = 0.0;
        for (std::size_t k = 0; ok && k < expected.size(); ++k) {
            worst = std::max(worst, std::abs(set.eigenvalues[k] - expected[k]));
        }
        ok = ok && worst < 1e-10;
        return "levels " + std::to_string(set.eigenvalues.size()) + ", max deviation " + fmt_double(worst);
    });

    suite.check("s2-n1-commute", n, [&](bool& ok) {
        const Eigen::MatrixXd s2 = total_spin_squared(n).to_dense();
        const Eigen::MatrixXd n1 = HammingWeightOperator(n).to_dense();
        const double c = (s2 * n1 - n1 * s2).cwiseAbs().maxCoeff();
        ok = c < 1e-10;
        return "max |[S^2, N_1]| = " + fmt_double(c);
    });

    suite.check("prefix-difference-identity", n, [&](bool& ok) {
        double worst = 0.0;
        for (int j = 2; j <= n; ++j) {
            const Eigen::MatrixXd lhs = prefix_spin_squared(j, n).to_dense() - prefix_spin_squared(j - 1, n).to_dense();
            const Eigen::Index dim = lhs.rows();
            const Eigen::MatrixXd rhs =
                (5.0 - 2.0 * j) / 4.0 * Eigen::MatrixXd::Identity(dim, dim) + coupling_operator(j, n).to_dense();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
        ok = worst < 1e-12;
        return "max deviation " + fmt_double(worst);
    });

    suite.check("swap-involution", n, [&](bool& ok) {
        double worst = 0.0;
        for (int b = 1; b < n; ++b) {
            for (int a = 0; a < b; ++a) {
                const Eigen::MatrixXd p = TranspositionSum(n, 0.0, {{a, b, 1.0}}).to_dense();
                worst = std::max(worst, (p * p - Eigen::MatrixXd::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff());
            }
        }
        ok = worst == 0.0;
        return "max |P^2 - I| = " + fmt_double(worst);
    });

    suite.check("coupling-spectrum", n, [&](bool& ok) {
        std::ostringstream detail;
        for (int j = 2; j <= n; ++j) {
            for (double lambda : eigen_oracle(coupling_operator(j, n)).eigenvalues) {
                const double r = std::round(lambda);
                if (std::abs(lambda - r) > 1e-10 || r < -1 || r > j - 1) {
                    ok = false;
                    detail << "H[" << j << "] eigenvalue " << lambda << " outside integers in [-1, " << j - 1 << "]; ";
                }
            }
        }
        return ok ? std::string("all eigenvalues integral in [-1, j-1]") : detail.str();
    });

    suite.check("step-spectrum", n, [&](bool& ok) {
        double worst = 0.0;
        for (int j = 2; j <= n; ++j) {
            const ProjectorSet prefix = eigen_oracle(prefix_spin_squared(j - 1, n));
            for (int two_s = (j - 1) % 2; two_s <= j - 1; two_s += 2) {
                if (two_s == 0) {
                    continue;
                }
                const auto level = prefix.find(two_s * (two_s + 2) / 4.0);
                if (!level) {
                    ok = false;
                    continue;
                }
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> basis(prefix.projectors[*level]);
                const Eigen::Index rank = prefix.rank(*level);
                const Eigen::MatrixXd v = basis.eigenvectors().rightCols(rank);
                const Eigen::MatrixXd g = v.transpose() * step_operator(j, n, two_s).to_dense() * v;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(g);
                for (Eigen::Index k = 0; k < spectrum.eigenvalues().size(); ++k) {
                    const double lambda = spectrum.eigenvalues()[k];
                    worst = std::max(worst, std::min(std::abs(lambda), std::abs(lambda - 1.0)));
                }
            }
        }
        ok = ok && worst < 1e-10;
        return "max distance from {0, 1}: " + fmt_double(worst);
    });

    suite.check("degeneracy", n, [&](bool& ok) {
        const SpinDecomposition decomposition(n);
        std::ostringstream detail;
        for (SpinLabel label : spin_labels(n)) {
            const int rank = decomposition.rank(label);
            const int formula = degeneracy(n, label.two_s);
            if (rank != formula) {
                ok = false;
                detail << label.to_string() << ": rank " << rank << " vs formula " << formula << "; ";
            }
        }
        return ok ? std::string("closed form matches projector ranks") : detail.str();
    });
}

void method_a_checks(Suite& suite, int n, const std::vector<StateVector>& states) {
    suite.check("method-a-oracle-equivalence", n, [&](bool& ok) {
        const SpinDecomposition decomposition(n);
        double worst = 0.0;
        double worst_total = 0.0;
        for (const StateVector& psi : states) {
            std::map<SpinLabel, double> probs;
            double total = 0.0;
            for (const FilterOutcome& o : method_a(psi)) {
                probs[*o.spin] += o.probability;
                total += o.probability;
            }
            for (SpinLabel label : spin_labels(n)) {
                const double weight = decomposition.project(psi, label).weight;
                const auto it = probs.find(label);
                worst = std::max(worst, std::abs(weight - (it == probs.end() ? 0.0 : it->second)));
            }
            worst_total = std::max(worst_total, std::abs(total - 1.0));
        }
        ok = worst < kProbabilityTolerance && worst_total < kMarginalTolerance;
        return std::to_string(states.size()) + " states, max |p - A| = " + fmt_double(worst) +
               ", max |sum - 1| = " + fmt_double(worst_total);
    });

    suite.check("method-a-funnel", n, [&](bool& ok) {
        double residual = 0.0;
        double leak = 0.0;
        for (const StateVector& psi : states) {
            for (const FilterOutcome& o : method_a(psi)) {
                residual = std::max({residual, spin_squared_residual(*o.post_state, o.spin->two_s),
                                     azimuthal_residual(*o.post_state, o.spin->two_m)});
                double same = 0.0;
                for (const FilterOutcome& again : method_a(*o.post_state)) {
                    if (again.spin == o.spin) {
                        same += again.probability;
                    }
                }
                leak = std::max(leak, 1.0 - same);
            }
        }
        ok = residual < kResidualTolerance && leak < 1e-10;
        return "max eigen-residual " + fmt_double(residual) + ", max re-filter leak " + fmt_double(leak);
    });
}

void path_checks(Suite& suite, int n, const std::vector<StateVector>& states) {
    suite.check("method-b-variants", n, [&](bool& ok) {
        double variant_gap = 0.0;
        double marginal_gap = 0.0;
        double residual = 0.0;
        for (const StateVector& psi : states) {
            const auto prefix = method_b(psi, Method::kBPrefixSpin);
            const auto coupling = method_b(psi, Method::kBCoupling);
            variant_gap = std::max(variant_gap, max_difference(by_label(prefix), by_label(coupling)));

            std::map<std::string, double> marginal;
            for (const auto& o : prefix) {
                marginal[o.spin->to_string()] += o.probability;
                residual = std::max({residual, prefix_residual(*o.post_state, *o.path),
                                     azimuthal_residual(*o.post_state, o.spin->two_m)});
            }
            marginal_gap = std::max(marginal_gap, max_difference(marginal, by_label(method_a(psi))));
        }
        ok = variant_gap < kMarginalTolerance && marginal_gap < kMarginalTolerance && residual < kResidualTolerance;
        return "s2j vs hj " + fmt_double(variant_gap) + ", path marginal vs method a " + fmt_double(marginal_gap) +
               ", path-memory residual " + fmt_double(residual);
    });

    suite.check("method-c-consistency", n, [&](bool& ok) {
        double deferred_gap = 0.0;
        double b_gap = 0.0;
        for (const StateVector& psi : states) {
            std::map<std::string, double> deferred;
            for (const auto& o : method_c_deferred(psi)) {
                deferred[path_key(*o.path)] += o.probability;
            }
            std::map<std::string, double> sequential;
            for (const auto& o : method_c_distribution(psi)) {
                sequential[path_key(*o.path)] += o.probability;
            }
            std::map<std::string, double> b_paths;
            for (const auto& o : method_b(psi, Method::kBCoupling)) {
                b_paths[path_key(*o.path)] += o.probability;
            }
            deferred_gap = std::max(deferred_gap, max_difference(deferred, sequential));
            b_gap = std::max(b_gap, max_difference(deferred, b_paths));
        }
        ok = deferred_gap < kMarginalTolerance && b_gap < kMarginalTolerance;
        return "deferred vs feedback " + fmt_double(deferred_gap) + ", deferred vs method b path marginal " +
               fmt_double(b_gap);
    });
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
    if (options.n_max < 2 || options.n_max > 6) {
        throw InputError("--n-max must lie in [2, 6]");
    }
    if (options.random_states < 1) {
        throw InputError("verify needs at least one random state");
    }
    Suite suite;
    Rng rng(options.seed);

    suite.check("singlet-triplet", 2, [&](bool& ok) {
        const auto triplet = method_a(StateVector::basis(2, "00"));
        const auto singlet_state = StateVector::from_amplitudes(
            {0.0, std::sqrt(0.5), -std::sqrt(0.5), 0.0});
        const auto singlet = method_a(singlet_state);
        ok = triplet.size() == 1 && triplet[0].spin == SpinLabel{2, 2} && std::abs(triplet[0].probability - 1) < 1e-12 &&
             singlet.size() == 1 && singlet[0].spin == SpinLabel{0, 0} && std::abs(singlet[0].probability - 1) < 1e-12;
        return "|00> -> " + triplet[0].label() + ", singlet -> " + singlet[0].label();
    });

    for (int n = 2; n <= options.n_max; ++n) {
        algebra_checks(suite, n);
        std::vector<StateVector> states;
        for (int k = 0; k < options.random_states; ++k) {
            states.push_back(random_state(n, rng));
        }
        method_a_checks(suite, n, states);
        // One state at n = 6.
        const std::size_t path_states = n >= 6 ? 1 : std::min<std::size_t>(states.size(), 5);
        path_checks(suite, n, std::vector<StateVector>(states.begin(), states.begin() + path_states));
    }

    suite.check("literal-coupling-bound-aliasing", 4, [&](bool& ok) {
        // n_[4] = 2 is the smallest register with n_[j] > log2(j - 1).
        const PhaseUnitary h4(PhaseUnitarySpec{TranspositionSum(4, 1.0, coupling_operator(4, 4).terms()), 0.25},
                              {0, 1, 2, 3});
        try {
            check_phase_resolution(h4, 2);
            ok = false;
            return std::string("2-qubit H[4] register was accepted");
        } catch (const ConfigurationError& e) {
            ok = true;
            return std::string("rejected: ") + e.what();
        }
    });

    return suite.take();
}

nlohmann::ordered_json verify_to_json(const std::vector<VerifyCheck>& checks) {
    nlohmann::ordered_json j;
    std::size_t failed = 0;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const VerifyCheck& c : checks) {
        failed += c.passed ? 0 : 1;
        list.push_back({{"name", c.name}, {"n", c.n}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["passed"] = failed == 0;
    j["total"] = checks.size();
    j["failed"] = failed;
    j["checks"] = std::move(list);
    return j;
}

}  // namespace tqsf
