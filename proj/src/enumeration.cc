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

#include "concentrate/protocols.h"

namespace concentrate {

namespace {

// Follows `prefix`, then the first branch at every later measurement, and
// records how many branches each measurement offered.
class ReplayChooser final : public BranchChooser {
   public:
    explicit ReplayChooser(std::vector<std::size_t> prefix) : choices_(std::move(prefix)) {
    }

    std::size_t choose(std::span<const MeasurementRecord> branches) override {
        if (depth_ == choices_.size()) {
            choices_.push_back(0);
        }
        const std::size_t pick = choices_[depth_++];
        widths_.push_back(branches.size());
        probability_ *= branches[pick].probability;
        return pick;
    }

    std::vector<std::size_t> choices_;
    std::vector<std::size_t> widths_;
    std::size_t depth_ = 0;
    double probability_ = 1.0;
};

}  // namespace

std::vector<Branch> enumerate_branches(const Protocol &protocol) {
    std::vector<Branch> out;
    std::vector<std::size_t> prefix;
    while (true) {
        ReplayChooser chooser(prefix);
        ProtocolOutcome outcome = protocol.run(chooser);
        chooser.choices_.resize(chooser.depth_);
        out.push_back(Branch{chooser.probability_, chooser.choices_, std::move(outcome)});

        // Advance the deepest measurement that still has an unexplored branch.
        std::size_t level = chooser.depth_;
        while (level > 0 && chooser.choices_[level - 1] + 1 >= chooser.widths_[level - 1]) {
            --level;
        }
        if (level == 0) {
            break;
        }
        prefix.assign(chooser.choices_.begin(), chooser.choices_.begin() + static_cast<std::ptrdiff_t>(level));
        ++prefix.back();
    }
    return out;
}

double shared_entanglement(const ProtocolOutcome &outcome) {
    StateVector shared = reduce_to(outcome.final_state, outcome.shared_labels);
    if (shared.num_qubits() == 2) {
        return single_pair_entanglement(
            schmidt_decompose_pair(shared, {shared.labels()[0]}, {shared.labels()[1]}));
    }
    std::vector<double> spectrum = schmidt_spectrum(shared, {shared.labels()[0]});
    const double minor = spectrum.size() > 1 ? spectrum[1] : 0.0;
    return std::clamp(2.0 * minor * minor, 0.0, 1.0);
}

double success_fidelity(const ProtocolOutcome &outcome) {
    if (outcome.kind != OutcomeKind::kSuccess || !outcome.bell) {
        throw Error(ErrorCode::kInvalidArgument, "only successful outcomes declare a target state");
    }
    return reduced_fidelity(outcome.final_state, bell_state(*outcome.bell, outcome.shared_labels));
}

}  // namespace concentrate
