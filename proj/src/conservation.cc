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

#include <memory>

#include "concentrate/analytics.h"

namespace concentrate {

ConservationReport conservation_check(const SchmidtPair &s, ProtocolId protocol, const CatSetup &cat) {
    std::unique_ptr<Protocol> runner;
    switch (protocol) {
        case ProtocolId::kProposal1:
        case ProtocolId::kProposal1Iterate:
            runner = std::make_unique<QubitAssistedCnotProtocol>(s);
            break;
        case ProtocolId::kProposal2:
            runner = std::make_unique<QubitAssistedPovmProtocol>(s);
            break;
        case ProtocolId::kEntanglementAssisted:
            runner = std::make_unique<EntanglementAssistedProtocol>(s);
            break;
        case ProtocolId::kCat:
            runner = std::make_unique<CatStateProtocol>(s, cat.n_parties, cat.method, cat.options);
            break;
        default:
            throw Error(ErrorCode::kInvalidArgument, "unknown protocol id");
    }
    ConservationReport report;
    report.e_before = optimal_fraction(s);
    for (const auto &branch : enumerate_branches(*runner)) {
        report.e_after += branch.probability * shared_entanglement(branch.outcome);
    }
    return report;
}

}  // namespace concentrate
