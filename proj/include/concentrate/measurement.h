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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "concentrate/state_vector.h"

namespace concentrate {

inline constexpr double kPovmTolerance = 1e-12;

/// Generalized measurement: positive operators summing to the identity, each
/// paired with its positive square root as the Kraus operator used for the
/// post-measurement state.
class Povm {
   public:
    /// Validates Hermiticity, positivity (eigenvalues >= -kPovmTolerance) and
    /// completeness (sum == I within kPovmTolerance); throws kInvalidArgument.
    Povm(std::vector<Operator> elements, std::vector<std::string> names);

    std::size_t size() const noexcept {
        return elements_.size();
    }
    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(elements_.front().rows());
    }
    const Operator &element(std::size_t i) const {
        return elements_.at(i);
    }
    const Operator &kraus(std::size_t i) const {
        return kraus_.at(i);
    }
    const std::string &name(std::size_t i) const {
        return names_.at(i);
    }
    std::span<const Operator> kraus_operators() const noexcept {
        return kraus_;
    }
    std::span<const std::string> names() const noexcept {
        return names_;
    }

   private:
    std::vector<Operator> elements_;
    std::vector<Operator> kraus_;
    std::vector<std::string> names_;
};

struct MeasurementRecord {
    std::size_t outcome_index = 0;
    std::string outcome_name;
    double probability = 0.0;
    StateVector post_state;
};

/// Picks a branch by cumulative probability in list order: the first branch
/// whose running total exceeds `u`. Branches are the nonzero-probability
/// outcomes produced by the *_branches functions below, so the rule matches
/// "u < p(first outcome) selects the first outcome".
std::size_t select_branch(std::span<const MeasurementRecord> branches, double u);

/// Every outcome of a Kraus-operator measurement with nonzero probability.
std::vector<MeasurementRecord> kraus_branches(const StateVector &state, std::span<const std::string> qubits,
                                              std::span<const Operator> kraus,
                                              std::span<const std::string> names);

std::vector<MeasurementRecord> measure_z_branches(const StateVector &state, std::string_view qubit);
/// Von Neumann measurement of Z on one qubit; outcome names "0" and "1".
MeasurementRecord measure_z(const StateVector &state, std::string_view qubit, double u);

std::vector<MeasurementRecord> povm_branches(const StateVector &state, std::span<const std::string> qubits,
                                             const Povm &povm);
MeasurementRecord apply_povm(const StateVector &state, std::span<const std::string> qubits, const Povm &povm, double u);

std::vector<MeasurementRecord> parity_branches(const StateVector &state, std::span<const std::string> qubits);
/// Projects two qubits onto span{|00>,|11>} ("even") or span{|01>,|10>} ("odd").
MeasurementRecord measure_subspace_parity(const StateVector &state, std::span<const std::string> qubits, double u);

std::vector<MeasurementRecord> incomplete_bell_branches(const StateVector &state, std::span<const std::string> qubits);
/// Measures two qubits known to be in the odd-parity subspace in the
/// {Psi+, Psi-} basis. Throws kPreconditionViolation if more than
/// kOracleTolerance of the weight sits outside that subspace.
MeasurementRecord incomplete_bell_measure(const StateVector &state, std::span<const std::string> qubits, double u);

/// Optimal unambiguous discrimination of alpha|0> +/- beta|1>. Elements, in
/// order: "conclusive-plus" (zero on the minus state), "conclusive-minus",
/// "inconclusive". Throws kDegenerateInput when beta == 0.
Povm build_idp_povm(const SchmidtPair &s);

/// The same construction for chi+/- = alpha1|00> +/- beta1|11>, with
/// (alpha1, beta1) = (alpha^2, beta^2) / sqrt(alpha^4 + beta^4), embedded in
/// span{|00>,|11>} of two qubits. The odd-parity identity is folded into the
/// inconclusive element.
Povm build_chi_povm(const SchmidtPair &s);

}  // namespace concentrate
