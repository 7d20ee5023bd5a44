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

#include "concentrate/state_vector.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace concentrate {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "invalid argument";
        case ErrorCode::kLabelCollision:
            return "label collision";
        case ErrorCode::kUnknownLabel:
            return "unknown label";
        case ErrorCode::kCapacityExceeded:
            return "capacity exceeded";
        case ErrorCode::kNotNormalized:
            return "not normalized";
        case ErrorCode::kUnsupportedPartition:
            return "unsupported partition";
        case ErrorCode::kDegenerateInput:
            return "degenerate input";
        case ErrorCode::kDimensionMismatch:
            return "dimension mismatch";
        case ErrorCode::kPreconditionViolation:
            return "precondition violation";
        case ErrorCode::kIo:
            return "i/o failure";
    }
    return "error";
}

namespace {

double squared_norm(std::span<const Complex> amps) {
    double total = 0.0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

void check_labels(const std::vector<std::string> &labels) {
    if (labels.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "a state needs at least one qubit");
    }
    if (labels.size() > kMaxQubits) {
        throw Error(ErrorCode::kCapacityExceeded,
                    std::to_string(labels.size()) + " qubits exceeds the limit of " + std::to_string(kMaxQubits));
    }
    for (std::size_t i = 1; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (labels[i] == labels[j]) {
                throw Error(ErrorCode::kLabelCollision, "duplicate qubit label '" + labels[i] + "'");
            }
        }
    }
}

void check_shape(const std::vector<std::string> &labels, const Amplitudes &amps) {
    check_labels(labels);
    if (amps.size() != (std::size_t{1} << labels.size())) {
        throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(std::size_t{1} << labels.size()) +
                                                       " amplitudes, got " + std::to_string(amps.size()));
    }
    for (const auto &a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw Error(ErrorCode::kInvalidArgument, "non-finite amplitude");
        }
    }
}

}  // namespace

StateVector::StateVector(std::vector<std::string> labels, Amplitudes amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    check_shape(labels_, amplitudes_);
    double n2 = squared_norm(amplitudes_);
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::kNotNormalized, "squared norm " + std::to_string(n2));
    }
}

StateVector StateVector::normalized(std::vector<std::string> labels, Amplitudes amplitudes) {
    check_shape(labels, amplitudes);
    double n2 = squared_norm(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw Error(ErrorCode::kNotNormalized, "cannot normalize a zero vector");
    }
    double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes) {
        a *= scale;
    }
    return StateVector(Checked{}, std::move(labels), std::move(amplitudes));
}

StateVector StateVector::basis(std::vector<std::string> labels, std::uint64_t index) {
    check_labels(labels);
    Amplitudes amps(std::size_t{1} << labels.size());
    if (index >= amps.size()) {
        throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    amps[index] = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

bool StateVector::has_label(std::string_view label) const noexcept {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(ErrorCode::kUnknownLabel, "no qubit labeled '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

double StateVector::norm() const {
    return std::sqrt(squared_norm(amplitudes_));
}

SchmidtPair SchmidtPair::from_coefficients(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "Schmidt coefficients must be finite and non-negative");
    }
    double n = std::hypot(a, b);
    if (n == 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "Schmidt coefficients cannot both be zero");
    }
    a /= n;
    b /= n;
    bool swapped = b > a;
    if (swapped) {
        std::swap(a, b);
    }
    return SchmidtPair(a, b, swapped);
}

SchmidtPair SchmidtPair::from_alpha_sq(double alpha_sq) {
    if (!std::isfinite(alpha_sq) || alpha_sq < 0.0 || alpha_sq > 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "alpha^2 must lie in [0, 1]");
    }
    return from_coefficients(std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq));
}

SchmidtPair SchmidtPair::maximal() {
    return from_coefficients(1.0, 1.0);
}

bool SchmidtPair::is_maximal() const noexcept {
    return alpha_ - beta_ <= 1e-15;
}

StateVector make_qubit_state(Complex a, Complex b, std::string label) {
    return StateVector::normalized({std::move(label)}, {a, b});
}

StateVector make_pair_state(const SchmidtPair &s, const std::array<std::string, 2> &labels) {
    return make_cat_state(s, 2, {labels[0], labels[1]});
}

StateVector make_cat_state(const SchmidtPair &s, std::size_t n_parties, const std::vector<std::string> &labels) {
    if (n_parties < 2 || n_parties > 10) {
        throw Error(ErrorCode::kInvalidArgument, "cat states need 2..10 parties, got " + std::to_string(n_parties));
    }
    if (labels.size() != n_parties) {
        throw Error(ErrorCode::kInvalidArgument, "one label per party is required");
    }
    Amplitudes amps(std::size_t{1} << n_parties);
    amps.front() = s.alpha();
    amps.back() = s.beta();
    return StateVector(labels, std::move(amps));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    // check_labels runs in the constructor, but fail before allocating 2^n.
    check_labels(labels);
    Amplitudes amps;
    amps.reserve(a.dimension() * b.dimension());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return StateVector::normalized(std::move(labels), std::move(amps));
}

StateVector apply_cnot(const StateVector &state, std::string_view control, std::string_view target) {
    std::size_t c = state.shift(control);
    std::size_t t = state.shift(target);
    if (c == t) {
        throw Error(ErrorCode::kInvalidArgument, "CNOT control and target must differ");
    }
    Amplitudes amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::size_t cmask = std::size_t{1} << c;
    const std::size_t tmask = std::size_t{1} << t;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
    return StateVector(state.labels(), std::move(amps));
}

StateVector permute(const StateVector &state, const std::vector<std::string> &order) {
    if (order.size() != state.num_qubits()) {
        throw Error(ErrorCode::kInvalidArgument, "permutation must name every qubit exactly once");
    }
    check_labels(order);
    const std::size_t n = order.size();
    // new bit (n-1-k) comes from old shift of order[k]
    std::vector<std::size_t> old_shift(n);
    for (std::size_t k = 0; k < n; ++k) {
        old_shift[k] = state.shift(order[k]);
    }
    Amplitudes amps(state.dimension());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        std::size_t src = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if ((j >> (n - 1 - k)) & 1U) {
                src |= std::size_t{1} << old_shift[k];
            }
        }
        amps[j] = state.amplitudes()[src];
    }
    return StateVector(order, std::move(amps));
}

Amplitudes apply_operator(const StateVector &state, std::span<const std::string> qubits, const Operator &op) {
    const std::size_t k = qubits.size();
    const std::size_t d = std::size_t{1} << k;
    if (k == 0 || static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d) {
        throw Error(ErrorCode::kDimensionMismatch, "operator dimension does not match " + std::to_string(k) + " qubit(s)");
    }
    if (k > 6) {
        throw Error(ErrorCode::kDimensionMismatch, "operators act on at most 6 qubits");
    }
    std::array<std::size_t, 6> masks{};
    std::size_t all = 0;
    for (std::size_t q = 0; q < k; ++q) {
        masks[q] = std::size_t{1} << state.shift(qubits[q]);
        if (all & masks[q]) {
            throw Error(ErrorCode::kLabelCollision, "qubit '" + qubits[q] + "' named twice");
        }
        all |= masks[q];
    }
    // offsets[l] = basis bits set by local index l
    std::array<std::size_t, 64> offsets{};
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t q = 0; q < k; ++q) {
            if ((l >> (k - 1 - q)) & 1U) {
                offsets[l] |= masks[q];
            }
        }
    }
    auto in = state.amplitudes();
    Amplitudes out(in.size());
    for (std::size_t base = 0; base < in.size(); ++base) {
        if (base & all) {
            continue;
        }
        for (std::size_t r = 0; r < d; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[base | offsets[c]];
            }
            out[base | offsets[r]] = acc;
        }
    }
    return out;
}

double fidelity(const StateVector &state, const StateVector &target) {
    std::vector<std::string> a = state.labels();
    std::vector<std::string> b = target.labels();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
        throw Error(ErrorCode::kInvalidArgument, "fidelity needs identical label sets");
    }
    StateVector aligned = permute(target, state.labels());
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        overlap += std::conj(aligned.amplitudes()[i]) * state.amplitudes()[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace concentrate
