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

#include "tqsf/spin_algebra.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tqsf/errors.h"

namespace tqsf {

namespace {

void check_oracle_size(int num_qubits) {
    if (num_qubits > kMaxOracleQubits) {
        throw CapacityError("dense operator on " + std::to_string(num_qubits) + " qubits exceeds the 2^" +
                            std::to_string(kMaxOracleQubits) + " oracle limit");
    }
}

std::uint64_t swap_bits(std::uint64_t index, int i, int j) {
    const std::uint64_t bi = (index >> i) & 1;
    const std::uint64_t bj = (index >> j) & 1;
    if (bi == bj) {
        return index;
    }
    return index ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::int64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

// Smallest r >= 1 with 2^r > largest.
int bits_exceeding(std::uint64_t largest) { return std::max(1, static_cast<int>(std::bit_width(largest))); }

}  // namespace

std::string format_half_integer(int twice) {
    if (twice % 2 == 0) {
        return std::to_string(twice / 2);
    }
    return std::to_string(twice) + "/2";
}

bool SpinLabel::valid_for(int n) const {
    return n >= 1 && two_s >= 0 && two_s <= n && (two_s - n) % 2 == 0 && std::abs(two_m) <= two_s &&
           (two_m - two_s) % 2 == 0;
}

std::string SpinLabel::to_string() const {
    return "S=" + format_half_integer(two_s) + ",M=" + format_half_integer(two_m);
}

std::vector<SpinLabel> spin_labels(int n) {
    std::vector<SpinLabel> labels;
    for (int two_s = n % 2; two_s <= n; two_s += 2) {
        for (int two_m = two_s; two_m >= -two_s; two_m -= 2) {
            labels.push_back({two_s, two_m});
        }
    }
    return labels;
}

// ---------------------------------------------------------------------------
// TranspositionSum

TranspositionSum::TranspositionSum(int num_qubits, double identity_coefficient, std::vector<Transposition> terms,
                                   double denominator)
    : num_qubits_(num_qubits),
      identity_coefficient_(identity_coefficient),
      terms_(std::move(terms)),
      denominator_(denominator) {
    if (num_qubits_ < 1) {
        throw InputError("operator needs at least one qubit");
    }
    if (denominator_ == 0.0) {
        throw InputError("operator denominator must be nonzero");
    }
    for (std::size_t a = 0; a < terms_.size(); ++a) {
        const auto& t = terms_[a];
        if (t.i < 0 || t.j >= num_qubits_ || t.i >= t.j) {
            throw InputError("transposition (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                             ") must satisfy 0 <= i < j < num_qubits");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (terms_[b].i == t.i && terms_[b].j == t.j) {
                throw InputError("repeated transposition");
            }
        }
    }
}

std::vector<int> TranspositionSum::support() const {
    std::vector<int> s;
    for (const auto& t : terms_) {
        s.push_back(t.i);
        s.push_back(t.j);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::pair<TranspositionSum, std::vector<int>> TranspositionSum::compacted() const {
    std::vector<int> s = support();
    if (s.empty()) {
        // A pure multiple of the identity: keep one qubit.
        return {TranspositionSum(1, identity_coefficient_, {}, denominator_), {0}};
    }
    auto local = [&](int q) { return static_cast<int>(std::lower_bound(s.begin(), s.end(), q) - s.begin()); };
    std::vector<Transposition> relabelled;
    relabelled.reserve(terms_.size());
    for (const auto& t : terms_) {
        relabelled.push_back({local(t.i), local(t.j), t.coefficient});
    }
    const int size = static_cast<int>(s.size());
    return {TranspositionSum(size, identity_coefficient_, std::move(relabelled), denominator_), std::move(s)};
}

Eigen::MatrixXd TranspositionSum::to_dense() const {
    check_oracle_size(num_qubits_);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
    Eigen::MatrixXd m = identity_coefficient_ * Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& t : terms_) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto row = static_cast<Eigen::Index>(swap_bits(static_cast<std::uint64_t>(col), t.i, t.j));
            m(row, col) += t.coefficient;
        }
    }
    return m / denominator_;
}

std::vector<Complex> TranspositionSum::apply(std::span<const Complex> psi) const {
    const std::size_t dim = std::size_t{1} << num_qubits_;
    if (psi.size() != dim) {
        throw InputError("vector length does not match the operator's qubit count");
    }
    std::vector<Complex> out(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        out[k] = identity_coefficient_ * psi[k];
    }
    for (const auto& t : terms_) {
        for (std::size_t k = 0; k < dim; ++k) {
            out[swap_bits(k, t.i, t.j)] += t.coefficient * psi[k];
        }
    }
    for (Complex& v : out) {
        v /= denominator_;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Operator builders

TranspositionSum total_spin_squared(int n) {
    if (n < 1) {
        throw InputError("total spin needs at least one qubit");
    }
    return prefix_spin_squared(n, n);
}

TranspositionSum prefix_spin_squared(int j, int n) {
    if (n < 1 || j < 1 || j > n) {
        throw InputError("prefix length " + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
    }
    std::vector<Transposition> terms;
    for (int b = 1; b < j; ++b) {
        for (int a = 0; a < b; ++a) {
            terms.push_back({a, b, 1.0});
        }
    }
    std::sort(terms.begin(), terms.end(), [](const Transposition& x, const Transposition& y) {
        return std::pair(x.i, x.j) < std::pair(y.i, y.j);
    });
    return TranspositionSum(n, j * (4.0 - j) / 4.0, std::move(terms));
}

TranspositionSum coupling_operator(int j, int n) {
    if (j < 2 || j > n) {
        throw InputError("coupling index " + std::to_string(j) + " outside [2, " + std::to_string(n) + "]");
    }
    std::vector<Transposition> terms;
    for (int i = 0; i < j - 1; ++i) {
        terms.push_back({i, j - 1, 1.0});
    }
    return TranspositionSum(n, 0.0, std::move(terms));
}

TranspositionSum step_operator(int j, int n, int two_s_prev) {
    if (j < 2 || j > n) {
        throw InputError("step index " + std::to_string(j) + " outside [2, " + std::to_string(n) + "]");
    }
    if (two_s_prev == 0) {
        throw InputError("prefix spin 0 can only increase; take the classical branch instead");
    }
    if (two_s_prev < 0 || two_s_prev > j - 1 || (two_s_prev - (j - 1)) % 2 != 0) {
        throw InputError("prefix spin " + format_half_integer(two_s_prev) + " is not reachable by " +
                         std::to_string(j - 1) + " qubits");
    }
    TranspositionSum h = coupling_operator(j, n);
    // S^2_[j] - S^2_[j-1] = (5 - 2j)/4 + H_[j]; adding S_[j-1] + 1/4 gives (3 - j + 2S_[j-1]) / 2.
    const double identity = (3.0 - j + two_s_prev) / 2.0;
    return TranspositionSum(n, identity, h.terms(), two_s_prev + 1.0);
}

HammingWeightOperator::HammingWeightOperator(int n) : n_(n) {
    if (n < 1) {
        throw InputError("N_1 needs at least one qubit");
    }
}

int HammingWeightOperator::eigenvalue(std::uint64_t basis_index) const {
    return std::popcount(basis_index & ((std::uint64_t{1} << n_) - 1));
}

Eigen::MatrixXd HammingWeightOperator::to_dense() const {
    check_oracle_size(n_);
    const Eigen::Index dim = Eigen::Index{1} << n_;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        m(k, k) = eigenvalue(static_cast<std::uint64_t>(k));
    }
    return m;
}

int azimuthal_two_m(int n, int hamming_weight) { return n - 2 * hamming_weight; }

// ---------------------------------------------------------------------------
// Oracle

Eigen::Index ProjectorSet::dimension() const { return projectors.empty() ? 0 : projectors.front().rows(); }

int ProjectorSet::rank(std::size_t level) const {
    return static_cast<int>(std::lround(projectors.at(level).trace()));
}

std::optional<std::size_t> ProjectorSet::find(double value) const {
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        if (std::abs(eigenvalues[k] - value) < kEigenvalueClusterTolerance) {
            return k;
        }
    }
    return std::nullopt;
}

ProjectorSet eigen_oracle(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols()) {
        throw InputError("oracle input must be square");
    }
    if (symmetric.rows() > (Eigen::Index{1} << kMaxOracleQubits)) {
        throw CapacityError("oracle dimension " + std::to_string(symmetric.rows()) + " exceeds 2^" +
                            std::to_string(kMaxOracleQubits));
    }
    if ((symmetric - symmetric.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InputError("oracle input is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed to converge");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    ProjectorSet set;
    Eigen::Index start = 0;
    const Eigen::Index dim = values.size();
    while (start < dim) {
        Eigen::Index stop = start + 1;
        while (stop < dim && values[stop] - values[stop - 1] < kEigenvalueClusterTolerance) {
            ++stop;
        }
        const Eigen::MatrixXd block = vectors.middleCols(start, stop - start);
        set.eigenvalues.push_back(values.segment(start, stop - start).mean());
        set.projectors.push_back(block * block.transpose());
        start = stop;
    }
    return set;
}

ProjectorSet eigen_oracle(const TranspositionSum& op) { return eigen_oracle(op.to_dense()); }

// ---------------------------------------------------------------------------
// Joint (S, M) projection

SpinDecomposition::SpinDecomposition(int n) : n_(n), total_spin_(eigen_oracle(total_spin_squared(n))) {}

namespace {

double spin_eigenvalue(int two_s) { return two_s * (two_s + 2) / 4.0; }

}  // namespace

Eigen::MatrixXd SpinDecomposition::projector(SpinLabel label) const {
    if (!label.valid_for(n_)) {
        throw InputError("label " + label.to_string() + " invalid for " + std::to_string(n_) + " qubits");
    }
    const auto level = total_spin_.find(spin_eigenvalue(label.two_s));
    const Eigen::Index dim = Eigen::Index{1} << n_;
    if (!level) {
        return Eigen::MatrixXd::Zero(dim, dim);
    }
    Eigen::MatrixXd p = total_spin_.projectors[*level];
    const HammingWeightOperator weight(n_);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (azimuthal_two_m(n_, weight.eigenvalue(static_cast<std::uint64_t>(k))) != label.two_m) {
            p.row(k).setZero();
            p.col(k).setZero();
        }
    }
    return p;
}

int SpinDecomposition::rank(SpinLabel label) const { return static_cast<int>(std::lround(projector(label).trace())); }

ProjectedComponent SpinDecomposition::project(const StateVector& state, SpinLabel label) const {
    if (state.num_qubits() != n_) {
        throw InputError("state qubit count does not match the decomposition");
    }
    const Eigen::MatrixXd p = projector(label);
    const auto amps = state.amplitudes();
    const Eigen::Index dim = p.rows();
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        psi[k] = amps[static_cast<std::size_t>(k)];
    }
    const Eigen::VectorXcd projected = p.cast<Complex>() * psi;
    ProjectedComponent out;
    out.weight = projected.squaredNorm();
    if (out.weight > kProbabilityFloor) {
        std::vector<Complex> v(projected.data(), projected.data() + dim);
        out.state = StateVector::from_amplitudes(std::move(v), true);
    }
    return out;
}

ProjectedComponent project_spin(const StateVector& state, SpinLabel label) {
    return SpinDecomposition(state.num_qubits()).project(state, label);
}

int degeneracy(int n, int two_s) {
    if (n < 1 || two_s < 0 || two_s > n || (two_s - n) % 2 != 0) {
        throw InputError("spin " + format_half_integer(two_s) + " invalid for " + std::to_string(n) + " qubits");
    }
    const int k = (n - two_s) / 2;
    return static_cast<int>(binomial(n, k) - binomial(n, k - 1));
}

// ---------------------------------------------------------------------------
// Register sizing and decoding

int min_ancillas(RegisterKind kind, int count) {
    if (count < 1) {
        throw InputError("register sizing needs a positive qubit count");
    }
    switch (kind) {
        case RegisterKind::kAzimuthal:
            return bits_exceeding(static_cast<std::uint64_t>(count));
        case RegisterKind::kSpinEven: {
            if (count % 2 != 0) {
                throw InputError("even spin register requested for odd n");
            }
            const std::uint64_t k = static_cast<std::uint64_t>(count) / 2;
            return bits_exceeding(k * (k + 1) / 2);
        }
        case RegisterKind::kSpinOdd: {
            if (count % 2 != 1) {
                throw InputError("odd spin register requested for even n");
            }
            const std::uint64_t k = static_cast<std::uint64_t>(count) / 2;
            return bits_exceeding(k * (k + 2));
        }
        case RegisterKind::kCoupling:
            if (count < 2) {
                throw InputError("coupling register needs j >= 2");
            }
            return bits_exceeding(static_cast<std::uint64_t>(count));
    }
    throw InputError("unknown register kind");
}

int min_spin_ancillas(int n) {
    return min_ancillas(n % 2 == 0 ? RegisterKind::kSpinEven : RegisterKind::kSpinOdd, n);
}

std::uint64_t spin_phase_integer(int two_s, int n) {
    if (n < 1 || two_s < 0 || two_s > n || (two_s - n) % 2 != 0) {
        throw InputError("spin " + format_half_integer(two_s) + " invalid for " + std::to_string(n) + " qubits");
    }
    if (n % 2 == 0) {
        const std::uint64_t s = static_cast<std::uint64_t>(two_s) / 2;
        return s * (s + 1) / 2;
    }
    const std::uint64_t j = static_cast<std::uint64_t>(two_s - 1) / 2;
    return j * (j + 2);
}

int decode_spin(std::uint64_t phase_integer, int n) {
    for (int two_s = n % 2; two_s <= n; two_s += 2) {
        if (spin_phase_integer(two_s, n) == phase_integer) {
            return two_s;
        }
    }
    throw DecodeError("register integer " + std::to_string(phase_integer) + " is not an attainable spin phase for " +
                      std::to_string(n) + " qubits");
}

}  // namespace tqsf
