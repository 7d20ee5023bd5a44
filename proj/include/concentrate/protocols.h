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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "concentrate/measurement.h"
#include "concentrate/random_stream.h"
#include "concentrate/state_vector.h"

namespace concentrate {

/// Phi+/- = (|0...0> +/- |1...1>)/sqrt2 and Psi+/- = (|01...1> +/- |10...0>)/sqrt2.
/// On two qubits these are the four Bell states; on more qubits they are the
/// GHZ-class targets of the cat-state protocols.
enum class BellKind { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

std::string_view to_string(BellKind kind);
StateVector bell_state(BellKind kind, const std::vector<std::string> &labels);

enum class OutcomeKind { kSuccess, kResidual, kDisentangled };

std::string_view to_string(OutcomeKind kind);

/// One classical message: who measured what, the result, and its probability.
struct TraceEntry {
    std::string actor;
    std::string step;
    std::string outcome;
    double probability = 0.0;
};

struct ProtocolOutcome {
    OutcomeKind kind = OutcomeKind::kDisentangled;
    std::optional<BellKind> bell;         // kSuccess only
    std::optional<SchmidtPair> residual;  // kResidual only
    /// Full post-measurement state, measured ancillas included.
    StateVector final_state;
    /// Qubits that hold the concentrated (or residual) entanglement. For Psi
    /// outcomes the first label is the flipped one.
    std::vector<std::string> shared_labels;
    std::vector<TraceEntry> trace;
};

/// Decides which branch a protocol follows at each measurement.
class BranchChooser {
   public:
    virtual ~BranchChooser() = default;
    virtual std::size_t choose(std::span<const MeasurementRecord> branches) = 0;
};

/// Draws one uniform value per measurement and applies select_branch.
class SamplingChooser final : public BranchChooser {
   public:
    explicit SamplingChooser(RandomStream &rng) : rng_(rng) {
    }
    std::size_t choose(std::span<const MeasurementRecord> branches) override {
        return select_branch(branches, rng_.next_unit());
    }

   private:
    RandomStream &rng_;
};

class Protocol {
   public:
    virtual ~Protocol() = default;
    virtual ProtocolOutcome run(BranchChooser &chooser) const = 0;
    ProtocolOutcome run(RandomStream &rng) const {
        SamplingChooser chooser(rng);
        return run(chooser);
    }
};

/// Ancilla alpha|0> + beta|1> at Alice (A1), CNOT A1 -> A2, Z measurement of A2.
/// Outcome 1 leaves (A1, B) in Psi+; outcome 0 leaves the residual pair
/// (alpha^2, beta^2)/sqrt(alpha^4 + beta^4) on (A1, B).
class QubitAssistedCnotProtocol final : public Protocol {
   public:
    explicit QubitAssistedCnotProtocol(const SchmidtPair &s);
    using Protocol::run;
    ProtocolOutcome run(BranchChooser &chooser) const override;

   private:
    SchmidtPair pair_;
    StateVector initial_;
};

/// Ancilla |0> at Bob (B2), CNOT B1 -> B2, unambiguous discrimination POVM on
/// B2. Conclusive outcomes leave (A, B1) in Phi+/-; the inconclusive outcome
/// leaves the product |00>.
class QubitAssistedPovmProtocol final : public Protocol {
   public:
    explicit QubitAssistedPovmProtocol(const SchmidtPair &s);
    using Protocol::run;
    ProtocolOutcome run(BranchChooser &chooser) const override;

   private:
    SchmidtPair pair_;
    StateVector initial_;
    std::optional<Povm> povm_;
};

/// Auxiliary pair (A1, A2) prepared by Alice next to the shared pair (A3, B).
/// Alice measures the parity of (A2, A3); the even branch is followed by the
/// chi discrimination POVM, the odd branch by an incomplete Bell measurement.
/// Success leaves (A1, B) in a Bell state.
class EntanglementAssistedProtocol final : public Protocol {
   public:
    explicit EntanglementAssistedProtocol(const SchmidtPair &s);
    using Protocol::run;
    ProtocolOutcome run(BranchChooser &chooser) const override;

   private:
    SchmidtPair pair_;
    StateVector initial_;
    std::optional<Povm> chi_povm_;
};

enum class CatMethod { kProposal1, kProposal2 };

std::string_view to_string(CatMethod method);
CatMethod parse_cat_method(std::string_view text);

struct CatOptions {
    /// Index of the acting party. Defaults to the first party for kProposal1
    /// and the last party for kProposal2.
    std::optional<std::size_t> actor;
    /// Lets n_parties == 2 through, to compare against the bipartite protocols.
    bool allow_bipartite = false;
};

/// One party of alpha|0...0> + beta|1...1> runs proposal 1 or 2 locally.
/// Parties are labeled A, B, C, ...; the actor's ancilla is "<party>_anc".
class CatStateProtocol final : public Protocol {
   public:
    CatStateProtocol(const SchmidtPair &s, std::size_t n_parties, CatMethod method, CatOptions options = {});
    using Protocol::run;
    ProtocolOutcome run(BranchChooser &chooser) const override;

    const std::vector<std::string> &parties() const noexcept {
        return parties_;
    }
    std::size_t actor() const noexcept {
        return actor_;
    }

   private:
    SchmidtPair pair_;
    CatMethod method_;
    std::vector<std::string> parties_;
    std::size_t actor_;
    std::string ancilla_;
    StateVector initial_;
    std::optional<Povm> povm_;
};

ProtocolOutcome proposal1_single(const SchmidtPair &s, RandomStream &rng);
ProtocolOutcome proposal2_single(const SchmidtPair &s, RandomStream &rng);
ProtocolOutcome entanglement_assisted_single(const SchmidtPair &s, RandomStream &rng);
ProtocolOutcome multipartite_concentrate(const SchmidtPair &s, std::size_t n_parties, CatMethod method,
                                         RandomStream &rng, CatOptions options = {});

struct RoundSummary {
    std::size_t round_index = 0;  // 1-based
    std::uint64_t pairs_in = 0;
    std::uint64_t successes = 0;
    /// Schmidt pair the next round starts from.
    SchmidtPair residual_pair = SchmidtPair::maximal();
};

inline constexpr double kResidualBetaFloor = 1e-9;

/// Schmidt pairs used by rounds 1..R of the iterative protocol. Stops at
/// max_rounds or once the next residual beta drops below kResidualBetaFloor.
std::vector<SchmidtPair> iteration_schedule(const SchmidtPair &s, std::size_t max_rounds);

/// Runs the iterative protocol on n_pairs independent pairs. Pair i draws from
/// streams.stream(i) across all of its rounds, so the result does not depend
/// on `threads`.
std::vector<RoundSummary> proposal1_iterate(const SchmidtPair &s, std::uint64_t n_pairs, std::size_t max_rounds,
                                            const StreamFactory &streams, unsigned threads = 1);

/// A complete measurement history with its exact probability.
struct Branch {
    double probability = 0.0;
    std::vector<std::size_t> choices;
    ProtocolOutcome outcome;
};

/// Every nonzero-probability path through `protocol`, depth first, by replaying
/// it with forced choices. No sampling is involved.
std::vector<Branch> enumerate_branches(const Protocol &protocol);

/// 2 * lambda_min^2 of the shared qubits, cut between the first shared qubit
/// and the rest.
double shared_entanglement(const ProtocolOutcome &outcome);

/// Fidelity of the shared qubits with the declared Bell/GHZ-class target.
double success_fidelity(const ProtocolOutcome &outcome);

enum class ProtocolId { kProposal1, kProposal1Iterate, kProposal2, kEntanglementAssisted, kCat };

std::string_view to_string(ProtocolId id);
/// Accepts proposal1, proposal1-iterate, proposal2, ent-assisted, cat.
ProtocolId parse_protocol_id(std::string_view text);

}  // namespace concentrate
