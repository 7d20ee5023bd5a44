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
#include <thread>

#include "concentrate/analytics.h"
#include "concentrate/protocols.h"

namespace concentrate {

std::vector<SchmidtPair> iteration_schedule(const SchmidtPair &s, std::size_t max_rounds) {
    std::vector<SchmidtPair> schedule;
    if (s.is_product()) {
        return schedule;
    }
    schedule.push_back(s);
    while (schedule.size() < max_rounds) {
        SchmidtPair next = residual_schmidt(schedule.back());
        if (next.beta() < kResidualBetaFloor) {
            break;
        }
        schedule.push_back(next);
    }
    return schedule;
}

std::vector<RoundSummary> proposal1_iterate(const SchmidtPair &s, std::uint64_t n_pairs, std::size_t max_rounds,
                                            const StreamFactory &streams, unsigned threads) {
    if (n_pairs == 0 || max_rounds == 0) {
        throw Error(ErrorCode::kInvalidArgument, "n_pairs and max_rounds must be at least 1");
    }
    const std::vector<SchmidtPair> schedule = iteration_schedule(s, max_rounds);
    std::vector<QubitAssistedCnotProtocol> rounds;
    rounds.reserve(schedule.size());
    for (const auto &pair : schedule) {
        rounds.emplace_back(pair);
    }

    // successes[r] counts pairs converted in round r + 1; counts add up in any order.
    auto run_block = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t> &successes) {
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream rng = streams.stream(i);
            for (std::size_t r = 0; r < rounds.size(); ++r) {
                if (rounds[r].run(rng).kind == OutcomeKind::kSuccess) {
                    ++successes[r];
                    break;
                }
            }
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n_pairs, 1024))));
    std::vector<std::vector<std::uint64_t>> tallies(workers, std::vector<std::uint64_t>(rounds.size(), 0));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n_pairs * w / workers;
            const std::uint64_t end = n_pairs * (w + 1) / workers;
            if (w + 1 == workers) {
                run_block(begin, end, tallies[w]);
            } else {
                pool.emplace_back([&, begin, end, w] { run_block(begin, end, tallies[w]); });
            }
        }
    }

    std::vector<RoundSummary> summary;
    std::uint64_t remaining = n_pairs;
    for (std::size_t r = 0; r < rounds.size() && remaining > 0; ++r) {
        std::uint64_t converted = 0;
        for (const auto &tally : tallies) {
            converted += tally[r];
        }
        const SchmidtPair next = r + 1 < schedule.size() ? schedule[r + 1] : residual_schmidt(schedule[r]);
        summary.push_back(RoundSummary{r + 1, remaining, converted, next});
        remaining -= converted;
    }
    return summary;
}

}  // namespace concentrate
