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

#include "concentrate/protocols.h"

#include <array>
#include <cmath>
#include <utility>

namespace concentrate {

std::string_view to_string(BellKind kind) {
    switch (kind) {
        case BellKind::kPhiPlus:
            return "phi-plus";
        case BellKind::kPhiMinus:
            return "phi-minus";
        case BellKind::kPsiPlus:
            return "psi-plus";
        case BellKind::kPsiMinus:
            return "psi-minus";
    }
    return "?";
}

std::string_view to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::kSuccess:
            return "success";
        case OutcomeKind::kResidual:
            return "residual";
        case OutcomeKind::kDisentangled:
            return "disentangled";
    }
    return "?";
}

std::string_view to_string(CatMethod method) {
    return method == CatMethod::kProposal1 ? "proposal1" : "proposal2";
}

CatMethod parse_cat_method(std::string_view text) {
    if (text == "proposal1") {
        return CatMethod::kProposal1;
    }
    if (text == "proposal2") {
        return CatMethod::kProposal2;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown cat method '" + std::string(text) + "'");
}

StateVector bell_state(BellKind kind, const std::vector<std::string> &labels) {
    const std::size_t n = labels.size();
    if (n < 2) {
        throw Error(ErrorCode::kInvalidArgument, "Bell/GHZ targets need at least two qubits");
    }
    Amplitudes amps(std::size_t{1} << n);
    const std::size_t all = amps.size() - 1;
    const std::size_t top = std::size_t{1} << (n - 1);
    const double h = 1.0 / std::sqrt(2.0);
    const bool phi = kind == BellKind::kPhiPlus || kind == BellKind::kPhiMinus;
    const double sign = (kind == BellKind::kPhiPlus || kind == BellKind::kPsiPlus) ? 1.0 : -1.0;
    if (phi) {
        amps[0] = h;
        amps[all] = sign * h;
    } else {
        amps[all ^ top] = h;  // |0 1...1>
        amps[top] = sign * h;  // |1 0...0>
    }
    return StateVector(labels, std::move(amps));
}

namespace {

// Residual pair read off the diagonal weights of the shared qubits, valid when
// they are in the form c0|0...0> + c1|1...1> up to a product with the rest.
SchmidtPair diagonal_pair(const StateVector &state, const std::vector<std::string> &shared) {
    std::size_t mask = 0;
    for (const auto &label : shared) {
        mask |= std::size_t{1} << state.shift(label);
    }
    double w0 = 0.0;
    double w1 = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const std::size_t bits = i & mask;
        if (bits == 0) {
            w0 += std::norm(state.amplitudes()[i]);
        } else if (bits == mask) {
            w1 += std::norm(state.amplitudes()[i]);
        }
    }
    return SchmidtPair::from_coefficients(std::sqrt(w0), std::sqrt(w1));
}

ProtocolOutcome disentangled(StateVector state, std::vector<std::string> shared, std::vector<TraceEntry> trace = {}) {
    return ProtocolOutcome{OutcomeKind::kDisentangled, std::nullopt, std::nullopt, std::move(state), std::move(shared),
                           std::move(trace)};
}

ProtocolOutcome success(BellKind bell, StateVector state, std::vector<std::string> shared,
                        std::vector<TraceEntry> trace) {
    return ProtocolOutcome{OutcomeKind::kSuccess, bell, std::nullopt, std::move(state), std::move(shared),
                           std::move(trace)};
}

ProtocolOutcome residual(StateVector state, std::vector<std::string> shared, std::vector<TraceEntry> trace) {
    SchmidtPair pair = diagonal_pair(state, shared);
    return ProtocolOutcome{OutcomeKind::kResidual, std::nullopt, pair, std::move(state), std::move(shared),
                           std::move(trace)};
}

MeasurementRecord pick(BranchChooser &chooser, std::vector<MeasurementRecord> branches) {
    std::size_t i = chooser.choose(branches);
    if (i >= branches.size()) {
        throw Error(ErrorCode::kInvalidArgument, "branch chooser returned an out-of-range index");
    }
    return std::move(branches[i]);
}

TraceEntry entry(std::string actor, std::string step, const MeasurementRecord &rec) {
    return TraceEntry{std::move(actor), std::move(step), rec.outcome_name, rec.probability};
}

std::optional<BellKind> conclusive_bell(std::size_t povm_outcome) {
    switch (povm_outcome) {
        case 0:
            return BellKind::kPhiPlus;
        case 1:
            return BellKind::kPhiMinus;
        default:
            return std::nullopt;
    }
}

std::vector<std::string> party_labels(std::size_t n_parties, bool allow_bipartite) {
    const std::size_t min_parties = allow_bipartite ? 2 : 3;
    if (n_parties < min_parties || n_parties > 10) {
        throw Error(ErrorCode::kInvalidArgument, "cat concentration needs " + std::to_string(min_parties) +
                                                     "..10 parties, got " + std::to_string(n_parties));
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n_parties; ++i) {
        labels.emplace_back(1, static_cast<char>('A' + i));
    }
    return labels;
}

std::size_t resolve_actor(std::optional<std::size_t> actor, CatMethod method, std::size_t n_parties) {
    std::size_t index = actor.value_or(method == CatMethod::kProposal1 ? 0 : n_parties - 1);
    if (index >= n_parties) {
        throw Error(ErrorCode::kInvalidArgument, "acting party index out of range");
    }
    return index;
}

}  // namespace

QubitAssistedCnotProtocol::QubitAssistedCnotProtocol(const SchmidtPair &s)
    : pair_(s),
      initial_(tensor(make_qubit_state(s.alpha(), s.beta(), "A1"), make_pair_state(s, {"A2", "B"}))) {
}

ProtocolOutcome QubitAssistedCnotProtocol::run(BranchChooser &chooser) const {
    if (pair_.is_product()) {
        return disentangled(make_pair_state(pair_, {"A2", "B"}), {"A2", "B"});
    }
    StateVector state = apply_cnot(initial_, "A1", "A2");
    MeasurementRecord rec = pick(chooser, measure_z_branches(state, "A2"));
    std::vector<TraceEntry> trace{entry("Alice", "measure-z A2", rec)};
    if (rec.outcome_name == "1") {
        return success(BellKind::kPsiPlus, std::move(rec.post_state), {"A1", "B"}, std::move(trace));
    }
    return residual(std::move(rec.post_state), {"A1", "B"}, std::move(trace));
}

QubitAssistedPovmProtocol::QubitAssistedPovmProtocol(const SchmidtPair &s)
    : pair_(s), initial_(tensor(make_pair_state(s, {"A", "B1"}), StateVector::basis({"B2"}, 0))) {
    if (!s.is_product()) {
        povm_ = build_idp_povm(s);
    }
}

ProtocolOutcome QubitAssistedPovmProtocol::run(BranchChooser &chooser) const {
    if (!povm_) {
        return disentangled(make_pair_state(pair_, {"A", "B1"}), {"A", "B1"});
    }
    static const std::array<std::string, 1> kAncilla{"B2"};
    StateVector state = apply_cnot(initial_, "B1", "B2");
    MeasurementRecord rec = pick(chooser, povm_branches(state, kAncilla, *povm_));
    std::vector<TraceEntry> trace{entry("Bob", "idp-povm B2", rec)};
    if (auto bell = conclusive_bell(rec.outcome_index)) {
        return success(*bell, std::move(rec.post_state), {"A", "B1"}, std::move(trace));
    }
    return disentangled(std::move(rec.post_state), {"A", "B1"}, std::move(trace));
}

EntanglementAssistedProtocol::EntanglementAssistedProtocol(const SchmidtPair &s)
    : pair_(s), initial_(tensor(make_pair_state(s, {"A1", "A2"}), make_pair_state(s, {"A3", "B"}))) {
    if (!s.is_product()) {
        chi_povm_ = build_chi_povm(s);
    }
}

ProtocolOutcome EntanglementAssistedProtocol::run(BranchChooser &chooser) const {
    if (!chi_povm_) {
        return disentangled(make_pair_state(pair_, {"A3", "B"}), {"A3", "B"});
    }
    static const std::array<std::string, 2> kMeasured{"A2", "A3"};
    MeasurementRecord parity = pick(chooser, parity_branches(initial_, kMeasured));
    std::vector<TraceEntry> trace{entry("Alice", "parity A2A3", parity)};
    if (parity.outcome_name == "even") {
        MeasurementRecord rec = pick(chooser, povm_branches(parity.post_state, kMeasured, *chi_povm_));
        trace.push_back(entry("Alice", "chi-povm A2A3", rec));
        if (auto bell = conclusive_bell(rec.outcome_index)) {
            return success(*bell, std::move(rec.post_state), {"A1", "B"}, std::move(trace));
        }
        return disentangled(std::move(rec.post_state), {"A1", "B"}, std::move(trace));
    }
    MeasurementRecord rec = pick(chooser, incomplete_bell_branches(parity.post_state, kMeasured));
    trace.push_back(entry("Alice", "incomplete-bell A2A3", rec));
    BellKind bell = rec.outcome_index == 0 ? BellKind::kPsiPlus : BellKind::kPsiMinus;
    return success(bell, std::move(rec.post_state), {"A1", "B"}, std::move(trace));
}

CatStateProtocol::CatStateProtocol(const SchmidtPair &s, std::size_t n_parties, CatMethod method, CatOptions options)
    : pair_(s),
      method_(method),
      parties_(party_labels(n_parties, options.allow_bipartite)),
      actor_(resolve_actor(options.actor, method, n_parties)),
      ancilla_(parties_[actor_] + "_anc"),
      initial_(method == CatMethod::kProposal1
                   ? tensor(make_qubit_state(s.alpha(), s.beta(), ancilla_), make_cat_state(s, n_parties, parties_))
                   : tensor(make_cat_state(s, n_parties, parties_), StateVector::basis({ancilla_}, 0))) {
    if (method == CatMethod::kProposal2 && !s.is_product()) {
        povm_ = build_idp_povm(s);
    }
}

ProtocolOutcome CatStateProtocol::run(BranchChooser &chooser) const {
    const std::string &actor = parties_[actor_];
    if (pair_.is_product()) {
        return disentangled(make_cat_state(pair_, parties_.size(), parties_), parties_);
    }
    if (method_ == CatMethod::kProposal1) {
        // The ancilla takes over the actor's place in the shared state.
        std::vector<std::string> shared{ancilla_};
        for (std::size_t i = 0; i < parties_.size(); ++i) {
            if (i != actor_) {
                shared.push_back(parties_[i]);
            }
        }
        StateVector state = apply_cnot(initial_, ancilla_, actor);
        MeasurementRecord rec = pick(chooser, measure_z_branches(state, actor));
        std::vector<TraceEntry> trace{entry(actor, "measure-z " + actor, rec)};
        if (rec.outcome_name == "1") {
            return success(BellKind::kPsiPlus, std::move(rec.post_state), std::move(shared), std::move(trace));
        }
        return residual(std::move(rec.post_state), std::move(shared), std::move(trace));
    }
    const std::array<std::string, 1> ancilla{ancilla_};
    StateVector state = apply_cnot(initial_, actor, ancilla_);
    MeasurementRecord rec = pick(chooser, povm_branches(state, ancilla, *povm_));
    std::vector<TraceEntry> trace{entry(actor, "idp-povm " + ancilla_, rec)};
    if (auto bell = conclusive_bell(rec.outcome_index)) {
        return success(*bell, std::move(rec.post_state), parties_, std::move(trace));
    }
    return disentangled(std::move(rec.post_state), parties_, std::move(trace));
}

ProtocolOutcome proposal1_single(const SchmidtPair &s, RandomStream &rng) {
    return QubitAssistedCnotProtocol(s).run(rng);
}

ProtocolOutcome proposal2_single(const SchmidtPair &s, RandomStream &rng) {
    return QubitAssistedPovmProtocol(s).run(rng);
}

ProtocolOutcome entanglement_assisted_single(const SchmidtPair &s, RandomStream &rng) {
    return EntanglementAssistedProtocol(s).run(rng);
}

ProtocolOutcome multipartite_concentrate(const SchmidtPair &s, std::size_t n_parties, CatMethod method,
                                         RandomStream &rng, CatOptions options) {
    return CatStateProtocol(s, n_parties, method, options).run(rng);
}

std::string_view to_string(ProtocolId id) {
    switch (id) {
        case ProtocolId::kProposal1:
            return "proposal1";
        case ProtocolId::kProposal1Iterate:
            return "proposal1-iterate";
        case ProtocolId::kProposal2:
            return "proposal2";
        case ProtocolId::kEntanglementAssisted:
            return "ent-assisted";
        case ProtocolId::kCat:
            return "cat";
    }
    return "?";
}

ProtocolId parse_protocol_id(std::string_view text) {
    for (auto id : {ProtocolId::kProposal1, ProtocolId::kProposal1Iterate, ProtocolId::kProposal2,
                    ProtocolId::kEntanglementAssisted, ProtocolId::kCat}) {
        if (text == to_string(id)) {
            return id;
        }
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown protocol '" + std::string(text) + "'");
}

}  // namespace concentrate
