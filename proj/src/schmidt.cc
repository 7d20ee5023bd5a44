// Copyright 2026 The Concentrate Authors
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
#include <cmath>

#include "concentrate/state_vector.h"

namespace concentrate {

namespace {

// Rows index the `left` qubits (in the given order), columns the rest.
Eigen::MatrixXcd reshape(const StateVector &state, const std::vector<std::string> &left) {
    std::vector<std::string> order = left;
    for (const auto &label : state.labels()) {
        if (std::find(left.begin(), left.end(), label) == left.end()) {
            order.push_back(label);
        }
    }
    if (order.size() != state.num_qubits()) {
        throw Error(ErrorCode::kUnknownLabel, "partition names qubits the state does not have");
    }
    StateVector aligned = permute(state, order);
    const auto rows = Eigen::Index{1} << left.size();
    const auto cols = static_cast<Eigen::Index>(state.dimension()) / rows;
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = aligned.amplitudes()[static_cast<std::size_t>(i * cols + j)];
        }
    }
    return m;
}

}  // namespace

SchmidtReport schmidt_decompose_pair(const StateVector &state, const std::vector<std::string> &left,
                                     const std::vector<std::string> &right) {
    if (left.size() != 1 || right.size() != 1) {
        throw Error(ErrorCode::kUnsupportedPartition, "only the one-qubit | one-qubit cut is supported");
    }
    if (state.num_qubits() != 2 || left[0] == right[0] || !state.has_label(left[0]) || !state.has_label(right[0])) {
        throw Error(ErrorCode::kInvalidArgument, "state must consist of exactly the left and right qubits");
    }
    Eigen::Matrix2cd m = reshape(state, left);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtReport report;
    report.lambda_major = svd.singularValues()(0);
    report.lambda_minor = svd.singularValues()(1);
    for (int k = 0; k < 2; ++k) {
        report.left_basis[k] = svd.matrixU().col(k);
        report.right_basis[k] = svd.matrixV().col(k).conjugate();
    }
    return report;
}

std::vector<double> schmidt_spectrum(const StateVector &state, const std::vector<std::string> &left) {
    if (left.empty() || left.size() >= state.num_qubits()) {
        throw Error(ErrorCode::kUnsupportedPartition, "both sides of the cut need at least one qubit");
    }
    Eigen::MatrixXcd m = reshape(state, left);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto &sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double single_pair_entanglement(const SchmidtReport &report) {
    return std::clamp(2.0 * report.lambda_minor * report.lambda_minor, 0.0, 1.0);
}

double reduced_fidelity(const StateVector &state, const StateVector &target) {
    const auto &keep = target.labels();
    if (keep.size() == state.num_qubits()) {
        return fidelity(state, target);
    }
    Eigen::MatrixXcd m = reshape(state, keep);
    Eigen::VectorXcd t(static_cast<Eigen::Index>(target.dimension()));
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        t(i) = target.amplitudes()[static_cast<std::size_t>(i)];
    }
    // <t| M M^dagger |t> = || M^dagger t ||^2
    double f = (m.adjoint() * t).squaredNorm();
    return std::clamp(f, 0.0, 1.0);
}

StateVector reduce_to(const StateVector &state, const std::vector<std::string> &keep) {
    if (keep.size() == state.num_qubits()) {
        return permute(state, keep);
    }
    Eigen::MatrixXcd m = reshape(state, keep);
    Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    const Eigen::Index top = rho.rows() - 1;
    double purity = eig.eigenvalues()(top);
    if (purity < 1.0 - kOracleTolerance) {
        throw Error(ErrorCode::kPreconditionViolation,
                    "kept qubits are entangled with the rest (largest eigenvalue " + std::to_string(purity) + ")");
    }
    Eigen::VectorXcd v = eig.eigenvectors().col(top);
    return StateVector::normalized(keep, Amplitudes(v.data(), v.data() + v.size()));
}

}  // namespace concentrate
