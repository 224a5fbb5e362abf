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

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "oracles.h"
#include "tqsf/errors.h"
#include "tqsf/evolution.h"

namespace tqsf {
namespace {

namespace oracle = testing;
using oracle::Matrix;
using oracle::to_eigen;

StateVector random_vector(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        a = Complex(g(rng), g(rng));
    }
    return StateVector::from_amplitudes(amps, true);
}

Matrix dense_exp(const Matrix& hermitian, double scale) {
    const Matrix generator = Complex(0.0, scale) * hermitian;
    return generator.exp();
}

Matrix projector_on(int q, int value, int n) {
    Matrix e = Matrix::Zero(2, 2);
    e(value, value) = 1.0;
    return oracle::embed(e, q, n);
}

TEST(SwapRotation, MatchesDenseExponential) {
    const int n = 3;
    const StateVector psi = random_vector(n, 1);
    for (double alpha : {0.0, 0.1, -0.7, M_PI / 3, 2.5}) {
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{2, 1}}) {
            StateVector s = psi;
            apply_swap_rotation(s, alpha, i, j);
            const Eigen::VectorXcd expected = dense_exp(oracle::swap_matrix(i, j, n), alpha) * to_eigen(psi);
            EXPECT_LT((to_eigen(s) - expected).norm(), 1e-12) << alpha << " " << i << "," << j;
        }
    }
    StateVector s(2);
    EXPECT_THROW(apply_swap_rotation(s, 0.1, 1, 1), InputError);
    EXPECT_THROW(apply_swap_rotation(s, 0.1, 0, 2), InputError);
}

TEST(SwapRotation, ControlledVersionActsOnMatchingBranch) {
    const int n = 4;
    const StateVector psi = random_vector(n, 2);
    StateVector s = psi;
    const std::vector<int> controls{3};
    const std::vector<int> values{0};
    apply_swap_rotation(s, 0.4, 0, 2, controls, values);
    const Matrix p0 = projector_on(3, 0, n);
    const Matrix expected = p0 * dense_exp(oracle::swap_matrix(0, 2, n), 0.4) + (Matrix::Identity(16, 16) - p0);
    EXPECT_LT((to_eigen(s) - expected * to_eigen(psi)).norm(), 1e-12);
}

TEST(PhaseUnitary, ExactPowersMatchDenseExponential) {
    const int n = 4;
    const StateVector psi = random_vector(n, 3);
    const PhaseUnitarySpec spec{total_spin_squared(n), 0.125};
    const PhaseUnitary u(spec, {0, 1, 2, 3});
    for (double power : {1.0, 2.0, 4.0, 0.5}) {
        StateVector s = psi;
        u.apply(s, power);
        const Eigen::VectorXcd expected =
            dense_exp(oracle::spin_squared(n, n), 2 * M_PI * 0.125 * power) * to_eigen(psi);
        EXPECT_LT((to_eigen(s) - expected).norm(), 1e-12) << power;
    }
}

TEST(PhaseUnitary, EigenphasesAreScaledEigenvalues) {
    const PhaseUnitary u(PhaseUnitarySpec{total_spin_squared(4), 0.125}, {0, 1, 2, 3});
    const auto phases = u.eigenphases();
    ASSERT_EQ(phases.size(), 3U);
    EXPECT_NEAR(phases[0], 0.0, 1e-12);
    EXPECT_NEAR(phases[1], 0.25, 1e-12);
    EXPECT_NEAR(phases[2], 0.75, 1e-12);
}

TEST(PhaseUnitary, ControlledOnScatteredQubits) {
    // Operator qubits 0..2 live on global qubits 4, 1, 2; qubit 0 controls.
    const int n = 5;
    const StateVector psi = random_vector(n, 4);
    const PhaseUnitarySpec spec{TranspositionSum(3, 0.5, {{0, 1, 1.0}, {1, 2, 2.0}}), 0.3};
    const PhaseUnitary u(spec, {4, 1, 2});
    StateVector s = psi;
    const std::vector<int> controls{0};
    const std::vector<int> values{1};
    u.apply_controlled(s, controls, values, 3.0);

    const Matrix h = 0.5 * Matrix::Identity(32, 32) + oracle::swap_matrix(4, 1, n) + 2.0 * oracle::swap_matrix(1, 2, n);
    const Matrix p1 = projector_on(0, 1, n);
    const Matrix expected = p1 * dense_exp(h, 2 * M_PI * 0.3 * 3.0) + (Matrix::Identity(32, 32) - p1);
    EXPECT_LT((to_eigen(s) - expected * to_eigen(psi)).norm(), 1e-12);

    StateVector t = psi;
    const std::vector<int> overlap{1};
    EXPECT_THROW(u.apply_controlled(t, overlap, values, 1.0), InputError);
}

TEST(PhaseUnitary, ExactGateIsTheDenseUnitary) {
    const PhaseUnitarySpec spec{coupling_operator(3, 3), 0.25};
    const PhaseUnitary u(spec, {0, 1, 2});
    const Gate g = u.exact_gate(1.0);
    const Matrix h = oracle::swap_matrix(0, 2, 3) + oracle::swap_matrix(1, 2, 3);
    EXPECT_LT((g.matrix() - dense_exp(h, 2 * M_PI * 0.25)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PhaseUnitary, EigenvectorsAcquireTheirPhase) {
    const int n = 4;
    const double alpha = 0.125;
    const PhaseUnitary u(PhaseUnitarySpec{total_spin_squared(n), alpha}, {0, 1, 2, 3});
    Eigen::SelfAdjointEigenSolver<Matrix> solver(oracle::spin_squared(n, n));
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const Eigen::VectorXcd v = solver.eigenvectors().col(k);
        std::vector<Complex> amps(v.data(), v.data() + v.size());
        StateVector s = StateVector::from_amplitudes(amps, true);
        u.apply(s, 1.0);
        const Complex phase = std::polar(1.0, 2 * M_PI * alpha * solver.eigenvalues()[k]);
        EXPECT_LT((to_eigen(s) - phase * v).norm(), 1e-10);
    }
}

TEST(PhaseUnitary, NegatedAlphaInverts) {
    const StateVector psi = random_vector(4, 11);
    StateVector s = psi;
    const TranspositionSum op = coupling_operator(4, 4);
    PhaseUnitary(PhaseUnitarySpec{op, 0.3}, {0, 1, 2, 3}).apply(s, 1.0);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    PhaseUnitary(PhaseUnitarySpec{op, -0.3}, {0, 1, 2, 3}).apply(s, 1.0);
    EXPECT_LT((to_eigen(s) - to_eigen(psi)).norm(), 1e-12);
}

TEST(PhaseUnitary, ControlledApplicationKicksPhaseBack) {
    // |0000> has S = 2, so U_S phase 2^(-3) * 6 = 3/4 lands on the control.
    StateVector s = StateVector(4).extended(1);
    s.apply(Gate::hadamard(4));
    const PhaseUnitary u(PhaseUnitarySpec{total_spin_squared(4), 0.125}, {0, 1, 2, 3});
    const std::vector<int> controls{4};
    const std::vector<int> values{1};
    u.apply_controlled(s, controls, values, 1.0);
    const Complex ratio = s[16] / s[0];
    EXPECT_NEAR(std::arg(ratio), std::arg(std::polar(1.0, 2 * M_PI * 0.75)), 1e-12);
    EXPECT_NEAR(std::abs(ratio), 1.0, 1e-12);

    StateVector idle = StateVector(4).extended(1);
    const StateVector before = idle;
    u.apply_controlled(idle, controls, values, 1.0);
    EXPECT_LT((to_eigen(idle) - to_eigen(before)).norm(), 1e-15);
}

TEST(PhaseUnitary, ControlledTrotterApproachesExact) {
    const StateVector psi = random_vector(5, 12);
    const std::vector<int> controls{4};
    const std::vector<int> values{1};
    StateVector exact = psi;
    PhaseUnitary(PhaseUnitarySpec{total_spin_squared(4), 0.125}, {0, 1, 2, 3})
        .apply_controlled(exact, controls, values, 2.0);
    double previous = 2.0;
    for (int steps : {8, 32, 128}) {
        StateVector s = psi;
        PhaseUnitary(PhaseUnitarySpec{total_spin_squared(4), 0.125, EvolutionMode::kTrotter, steps}, {0, 1, 2, 3})
            .apply_controlled(s, controls, values, 2.0);
        const double err = (to_eigen(s) - to_eigen(exact)).norm();
        EXPECT_LT(err, previous);
        previous = err;
    }
    EXPECT_LT(previous, 0.05);
}

TEST(PhaseUnitary, Validation) {
    EXPECT_THROW(PhaseUnitary(PhaseUnitarySpec{total_spin_squared(3), 0.25}, {0, 1}), InputError);
    EXPECT_THROW(
        PhaseUnitary(PhaseUnitarySpec{total_spin_squared(3), 0.25, EvolutionMode::kTrotter, 0}, {0, 1, 2}),
        InputError);
}

TEST(Trotter, ErrorShrinksWithSteps) {
    const int n = 4;
    const StateVector psi = random_vector(n, 5);
    const PhaseUnitarySpec exact{total_spin_squared(n), 0.125};
    StateVector reference = psi;
    apply_exact(exact, reference, 1.0);
    double previous = 2.0;
    for (int steps : {4, 8, 16, 32, 64}) {
        StateVector s = psi;
        apply_trotter(PhaseUnitarySpec{total_spin_squared(n), 0.125, EvolutionMode::kTrotter, steps}, s, 1.0);
        const double err = (to_eigen(s) - to_eigen(reference)).norm();
        EXPECT_LT(err, previous) << steps;
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        previous = err;
    }
}

TEST(Trotter, SingleTranspositionIsExact) {
    const StateVector psi = random_vector(3, 6);
    const PhaseUnitarySpec spec{TranspositionSum(3, 0.7, {{0, 2, 1.0}}), 0.2, EvolutionMode::kTrotter, 1};
    StateVector a = psi;
    apply_trotter(spec, a, 2.0);
    StateVector b = psi;
    apply_exact(PhaseUnitarySpec{spec.op, spec.alpha}, b, 2.0);
    EXPECT_LT((to_eigen(a) - to_eigen(b)).norm(), 1e-12);
}

TEST(Trotter, FollowsLexicographicProductFormula) {
    // One step of exp(i a (P01 + P02 + P12)) as ordered rotations.
    const int n = 3;
    const StateVector psi = random_vector(n, 7);
    const double alpha = 0.05;
    StateVector s = psi;
    apply_trotter(PhaseUnitarySpec{TranspositionSum(n, 0.0, {{1, 2, 1.0}, {0, 2, 1.0}, {0, 1, 1.0}}), alpha,
                                   EvolutionMode::kTrotter, 1},
                  s, 1.0);
    const double a = 2 * M_PI * alpha;
    const Matrix expected = dense_exp(oracle::swap_matrix(1, 2, n), a) * dense_exp(oracle::swap_matrix(0, 2, n), a) *
                            dense_exp(oracle::swap_matrix(0, 1, n), a);
    EXPECT_LT((to_eigen(s) - expected * to_eigen(psi)).norm(), 1e-12);
}

TEST(AzimuthalPhase, MatchesDiagonalExponential) {
    const int n = 4;
    const int r = 3;
    const int total = n + 1;
    const StateVector psi = random_vector(total, 8);
    const AzimuthalPhase u({0, 1, 2, 3}, r);
    const auto phases = u.eigenphases();
    ASSERT_EQ(phases.size(), 5U);
    EXPECT_NEAR(phases[4], 0.5, 1e-15);

    Matrix n1 = Matrix::Zero(32, 32);
    for (int q = 0; q < n; ++q) {
        n1 += projector_on(q, 1, total);
    }
    for (double power : {1.0, 2.0, 4.0}) {
        StateVector s = psi;
        const std::vector<int> controls{4};
        const std::vector<int> values{1};
        u.apply_controlled(s, controls, values, power);
        const Matrix p1 = projector_on(4, 1, total);
        const Matrix expected =
            p1 * dense_exp(n1, 2 * M_PI * power / (1 << r)) + (Matrix::Identity(32, 32) - p1);
        EXPECT_LT((to_eigen(s) - expected * to_eigen(psi)).norm(), 1e-12) << power;

        StateVector g = psi;
        for (const Gate& gate : u.phase_gates(power)) {
            g.apply_controlled(controls, values, gate);
        }
        EXPECT_LT((to_eigen(g) - to_eigen(s)).norm(), 1e-12);
    }
}

}  // namespace
}  // namespace tqsf
