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

#include "concentrate/measurement.h"

#include <cmath>

namespace concentrate {

std::size_t select_branch(std::span<const MeasurementRecord> branches, double u) {
    if (branches.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "no branch to select");
    }
    if (!(u >= 0.0 && u < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "random value must lie in [0, 1)");
    }
    double cumulative = 0.0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        cumulative += branches[i].probability;
        if (u < cumulative) {
            return i;
        }
    }
    // Rounding can leave the total a few ulps short of 1.
    return branches.size() - 1;
}

std::vector<MeasurementRecord> kraus_branches(const StateVector &state, std::span<const std::string> qubits,
                                              std::span<const Operator> kraus,
                                              std::span<const std::string> names) {
    if (kraus.size() != names.size()) {
        throw Error(ErrorCode::kInvalidArgument, "one name per Kraus operator is required");
    }
    std::vector<MeasurementRecord> out;
    out.reserve(kraus.size());
    for (std::size_t i = 0; i < kraus.size(); ++i) {
        Amplitudes amps = apply_operator(state, qubits, kraus[i]);
        double p = 0.0;
        for (const auto &a : amps) {
            p += std::norm(a);
        }
        if (!(p > 0.0) || !std::isnormal(p)) {
            continue;
        }
        out.push_back(MeasurementRecord{i, names[i], p, StateVector::normalized(state.labels(), std::move(amps))});
    }
    return out;
}

namespace {

const std::vector<Operator> &z_projectors() {
    static const std::vector<Operator> ops = [] {
        Operator p0 = Operator::Zero(2, 2);
        Operator p1 = Operator::Zero(2, 2);
        p0(0, 0) = 1.0;
        p1(1, 1) = 1.0;
        return std::vector<Operator>{p0, p1};
    }();
    return ops;
}

const std::vector<Operator> &parity_projectors() {
    static const std::vector<Operator> ops = [] {
        Operator even = Operator::Zero(4, 4);
        Operator odd = Operator::Zero(4, 4);
        even(0, 0) = even(3, 3) = 1.0;
        odd(1, 1) = odd(2, 2) = 1.0;
        return std::vector<Operator>{even, odd};
    }();
    return ops;
}

const std::vector<Operator> &psi_projectors() {
    static const std::vector<Operator> ops = [] {
        Eigen::Vector4cd plus(0.0, 1.0, 1.0, 0.0);
        Eigen::Vector4cd minus(0.0, 1.0, -1.0, 0.0);
        plus /= std::sqrt(2.0);
        minus /= std::sqrt(2.0);
        return std::vector<Operator>{plus * plus.adjoint(), minus * minus.adjoint()};
    }();
    return ops;
}

void require_two_distinct(const StateVector &state, std::span<const std::string> qubits) {
    if (qubits.size() != 2) {
        throw Error(ErrorCode::kInvalidArgument, "exactly two qubits are required");
    }
    if (qubits[0] == qubits[1]) {
        throw Error(ErrorCode::kLabelCollision, "qubit '" + qubits[0] + "' named twice");
    }
    state.position(qubits[0]);
    state.position(qubits[1]);
}

}  // namespace

std::vector<MeasurementRecord> measure_z_branches(const StateVector &state, std::string_view qubit) {
    static const std::vector<std::string> names{"0", "1"};
    const std::string label(qubit);
    return kraus_branches(state, std::span(&label, 1), z_projectors(), names);
}

MeasurementRecord measure_z(const StateVector &state, std::string_view qubit, double u) {
    auto branches = measure_z_branches(state, qubit);
    return std::move(branches[select_branch(branches, u)]);
}

std::vector<MeasurementRecord> povm_branches(const StateVector &state, std::span<const std::string> qubits,
                                             const Povm &povm) {
    if (std::size_t{1} << qubits.size() != povm.dimension()) {
        throw Error(ErrorCode::kDimensionMismatch, "POVM of dimension " + std::to_string(povm.dimension()) +
                                                       " applied to " + std::to_string(qubits.size()) + " qubit(s)");
    }
    return kraus_branches(state, qubits, povm.kraus_operators(), povm.names());
}

MeasurementRecord apply_povm(const StateVector &state, std::span<const std::string> qubits, const Povm &povm,
                             double u) {
    auto branches = povm_branches(state, qubits, povm);
    return std::move(branches[select_branch(branches, u)]);
}

std::vector<MeasurementRecord> parity_branches(const StateVector &state, std::span<const std::string> qubits) {
    static const std::vector<std::string> names{"even", "odd"};
    require_two_distinct(state, qubits);
    return kraus_branches(state, qubits, parity_projectors(), names);
}

MeasurementRecord measure_subspace_parity(const StateVector &state, std::span<const std::string> qubits, double u) {
    auto branches = parity_branches(state, qubits);
    return std::move(branches[select_branch(branches, u)]);
}

std::vector<MeasurementRecord> incomplete_bell_branches(const StateVector &state,
                                                        std::span<const std::string> qubits) {
    static const std::vector<std::string> names{"psi-plus", "psi-minus"};
    require_two_distinct(state, qubits);
    const std::size_t ma = std::size_t{1} << state.shift(qubits[0]);
    const std::size_t mb = std::size_t{1} << state.shift(qubits[1]);
    double odd = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (static_cast<bool>(i & ma) != static_cast<bool>(i & mb)) {
            odd += std::norm(state.amplitudes()[i]);
        }
    }
    if (odd < 1.0 - kOracleTolerance) {
        throw Error(ErrorCode::kPreconditionViolation,
                    "incomplete Bell measurement needs an odd-parity input (odd weight " + std::to_string(odd) + ")");
    }
    return kraus_branches(state, qubits, psi_projectors(), names);
}

MeasurementRecord incomplete_bell_measure(const StateVector &state, std::span<const std::string> qubits, double u) {
    auto branches = incomplete_bell_branches(state, qubits);
    return std::move(branches[select_branch(branches, u)]);
}

}  // namespace concentrate
