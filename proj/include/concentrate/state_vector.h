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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "concentrate/error.h"

namespace concentrate {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;
/// Dense operator acting on a handful of named qubits (d = 2 or 4 in practice).
using Operator = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kOracleTolerance = 1e-10;

/// Normalized pure state over labeled qubits.
///
/// Label order fixes bit significance: labels()[0] is the most significant bit
/// of the basis index, so |A=1,B=0> over ("A","B") is index 2. Values are
/// immutable; every operation in this library returns a new StateVector.
class StateVector {
   public:
    /// Validates labels (distinct, 1..kMaxQubits), length 2^n, finite entries
    /// and unit norm within kNormTolerance.
    StateVector(std::vector<std::string> labels, Amplitudes amplitudes);

    /// Same validation, but rescales to unit norm first. Throws kNotNormalized
    /// if the vector is zero.
    static StateVector normalized(std::vector<std::string> labels, Amplitudes amplitudes);

    static StateVector basis(std::vector<std::string> labels, std::uint64_t index);

    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex amplitude(std::size_t index) const {
        return amplitudes_.at(index);
    }
    std::size_t num_qubits() const noexcept {
        return labels_.size();
    }
    std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }

    bool has_label(std::string_view label) const noexcept;
    /// Position of `label` in labels(). Throws kUnknownLabel.
    std::size_t position(std::string_view label) const;
    /// Bit shift of `label` inside a basis index.
    std::size_t shift(std::string_view label) const {
        return num_qubits() - 1 - position(label);
    }

    double norm() const;

   private:
    struct Checked {};
    StateVector(Checked, std::vector<std::string> labels, Amplitudes amplitudes)
        : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    }

    std::vector<std::string> labels_;
    Amplitudes amplitudes_;
};

/// Schmidt coefficients (alpha, beta) of alpha|00> + beta|11>, kept canonical:
/// 0 <= beta <= alpha and alpha^2 + beta^2 = 1.
class SchmidtPair {
   public:
    /// Normalizes (a, b) and swaps them if needed so beta is the smaller one.
    /// Rejects negative, non-finite, or all-zero input.
    static SchmidtPair from_coefficients(double a, double b);
    /// alpha^2 in [0, 1]; values below 1/2 are canonicalized by swapping.
    static SchmidtPair from_alpha_sq(double alpha_sq);
    static SchmidtPair maximal();

    double alpha() const noexcept {
        return alpha_;
    }
    double beta() const noexcept {
        return beta_;
    }
    double alpha_sq() const noexcept {
        return alpha_ * alpha_;
    }
    double beta_sq() const noexcept {
        return beta_ * beta_;
    }
    /// x = beta / alpha, in [0, 1].
    double ratio() const noexcept {
        return beta_ / alpha_;
    }
    /// True when the constructor had to exchange the inputs.
    bool swapped() const noexcept {
        return swapped_;
    }
    bool is_maximal() const noexcept;
    bool is_product() const noexcept {
        return beta_ == 0.0;
    }

   private:
    SchmidtPair(double alpha, double beta, bool swapped) : alpha_(alpha), beta_(beta), swapped_(swapped) {
    }

    double alpha_;
    double beta_;
    bool swapped_;
};

/// Result of decomposing a two-qubit pure state across its 1|1 cut.
struct SchmidtReport {
    double lambda_major = 1.0;
    double lambda_minor = 0.0;
    std::array<Eigen::Vector2cd, 2> left_basis;
    std::array<Eigen::Vector2cd, 2> right_basis;
};

/// a|0> + b|1> on one qubit, normalized.
StateVector make_qubit_state(Complex a, Complex b, std::string label);

/// alpha|00> + beta|11>.
StateVector make_pair_state(const SchmidtPair &s, const std::array<std::string, 2> &labels);

/// alpha|0...0> + beta|1...1> over 2..10 parties.
StateVector make_cat_state(const SchmidtPair &s, std::size_t n_parties, const std::vector<std::string> &labels);

/// Kronecker product; labels of `a` come first.
StateVector tensor(const StateVector &a, const StateVector &b);

/// |c,t> -> |c, t xor c>.
StateVector apply_cnot(const StateVector &state, std::string_view control, std::string_view target);

/// Reorders qubits; `order` must be a permutation of state.labels().
StateVector permute(const StateVector &state, const std::vector<std::string> &order);

/// Applies `op` (dimension 2^k) to the k named qubits; qubits[0] is the most
/// significant bit of the operator's index. At most 6 qubits.
/// The result is not renormalized.
Amplitudes apply_operator(const StateVector &state, std::span<const std::string> qubits, const Operator &op);

/// Decomposes a two-qubit state across left|right.
SchmidtReport schmidt_decompose_pair(const StateVector &state, const std::vector<std::string> &left,
                                     const std::vector<std::string> &right);

/// Descending Schmidt coefficients for an arbitrary bipartition (left vs. the
/// remaining labels), from the singular values of the reshaped amplitudes.
std::vector<double> schmidt_spectrum(const StateVector &state, const std::vector<std::string> &left);

/// Entanglement of single-pair purification, 2 * lambda_minor^2.
double single_pair_entanglement(const SchmidtReport &report);

/// |<target|state>|^2; label sets must match, order may differ.
double fidelity(const StateVector &state, const StateVector &target);

/// <target| rho |target> where rho is the reduced state of `state` on
/// target.labels() (a subset of state.labels()).
double reduced_fidelity(const StateVector &state, const StateVector &target);

/// Extracts the pure factor on `keep`. Throws kPreconditionViolation when the
/// kept qubits are entangled with the rest (purity below 1 - kOracleTolerance).
StateVector reduce_to(const StateVector &state, const std::vector<std::string> &keep);

}  // namespace concentrate
