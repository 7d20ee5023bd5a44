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
#include <functional>
#include <memory>
#include <thread>

#include "concentrate/harness.h"

namespace concentrate {

namespace {

std::unique_ptr<Protocol> make_protocol(const CampaignConfig &config, const SchmidtPair &s) {
    switch (config.protocol) {
        case ProtocolId::kProposal1:
        case ProtocolId::kProposal1Iterate:
            return std::make_unique<QubitAssistedCnotProtocol>(s);
        case ProtocolId::kProposal2:
            return std::make_unique<QubitAssistedPovmProtocol>(s);
        case ProtocolId::kEntanglementAssisted:
            return std::make_unique<EntanglementAssistedProtocol>(s);
        case ProtocolId::kCat:
            return std::make_unique<CatStateProtocol>(s, config.parties, config.method, CatOptions{config.actor});
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown protocol id");
}

CatSetup cat_setup(const CampaignConfig &config) {
    return CatSetup{config.parties, config.method, CatOptions{config.actor}};
}

double analytic_success(const CampaignConfig &config, const SchmidtPair &s) {
    switch (config.protocol) {
        case ProtocolId::kProposal1:
        case ProtocolId::kProposal1Iterate:
            return cnot_success_probability(s);
        case ProtocolId::kProposal2:
            return idp_conclusive_probability(s);
        case ProtocolId::kEntanglementAssisted: {
            // even branch * conclusive + odd branch
            const double even = s.alpha_sq() * s.alpha_sq() + s.beta_sq() * s.beta_sq();
            return even * conclusive_prob_chi(s) + cnot_success_probability(s);
        }
        case ProtocolId::kCat:
            return config.method == CatMethod::kProposal1 ? cnot_success_probability(s)
                                                          : idp_conclusive_probability(s);
    }
    return 0.0;
}

// Expected cumulative fraction after the scheduled rounds.
double analytic_iterated_fraction(const std::vector<SchmidtPair> &schedule) {
    if (schedule.empty()) {
        return 0.0;
    }
    if (!schedule.front().is_maximal()) {
        return yield_series(schedule.front(), schedule.size()).cumulative_fractions.back();
    }
    // alpha == beta: every residual is maximal again.
    double remaining = 1.0;
    double total = 0.0;
    for (const auto &pair : schedule) {
        const double p = cnot_success_probability(pair);
        total += remaining * p;
        remaining *= 1.0 - p;
    }
    return total;
}

struct Statistic {
    double std_error;
    double z;
};

Statistic binomial_z(double successes, double n, double analytic) {
    const double p_hat = successes / n;
    double se = std::sqrt(p_hat * (1.0 - p_hat) / n);
    Statistic out{se, 0.0};
    // Zero empirical spread falls back to the analytic one.
    double scale = se > 0.0 ? se : std::sqrt(analytic * (1.0 - analytic) / n);
    if (scale > 0.0) {
        out.z = (p_hat - analytic) / scale;
    } else {
        out.z = std::abs(p_hat - analytic) <= 1e-12 ? 0.0 : INFINITY;
    }
    return out;
}

// Splits [0, n) into contiguous blocks, one per worker; `body` tallies into its
// own accumulator. Results are summed in block order.
template <typename Tally>
Tally parallel_tally(std::uint64_t n, unsigned threads, const Tally &zero,
                     const std::function<void(std::uint64_t, std::uint64_t, Tally &)> &body) {
    const unsigned workers =
        std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 1024))));
    std::vector<Tally> tallies(workers, zero);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w + 1 < workers; ++w) {
            pool.emplace_back([&, w] { body(n * w / workers, n * (w + 1) / workers, tallies[w]); });
        }
        body(n * (workers - 1) / workers, n, tallies.back());
    }
    Tally total = zero;
    for (const auto &t : tallies) {
        total += t;
    }
    return total;
}

TrialTrace to_trace(std::uint64_t trial, const ProtocolOutcome &outcome) {
    return TrialTrace{trial, outcome.kind, outcome.bell, outcome.trace};
}

std::string branch_path(const ProtocolOutcome &outcome) {
    std::string path;
    for (const auto &step : outcome.trace) {
        if (!path.empty()) {
            path += '/';
        }
        path += step.outcome;
    }
    return path.empty() ? "none" : path;
}

EnsembleReport iterate_campaign(const CampaignConfig &config, const SchmidtPair &s) {
    EnsembleReport report;
    report.config = config;
    report.mode = RunMode::kCampaign;
    const std::vector<SchmidtPair> schedule = iteration_schedule(s, config.rounds);
    const StreamFactory streams(config.seed);
    const auto summary = proposal1_iterate(s, config.trials, config.rounds, streams, config.threads);

    bool pass = true;
    double converted = 0.0;
    for (const auto &round : summary) {
        RoundRow row;
        row.round = round.round_index;
        row.pairs_in = static_cast<double>(round.pairs_in);
        row.successes = static_cast<double>(round.successes);
        row.empirical_p = row.successes / row.pairs_in;
        row.analytic_p = cnot_success_probability(schedule[round.round_index - 1]);
        auto stat = binomial_z(row.successes, row.pairs_in, row.analytic_p);
        row.std_error = stat.std_error;
        row.z_score = stat.z;
        pass = pass && std::abs(row.z_score) <= config.check_tolerance_sigma;
        converted += row.successes;
        report.rounds.push_back(row);
    }
    const double n = static_cast<double>(config.trials);
    report.overall.empirical_fraction = converted / n;
    report.overall.analytic_fraction = analytic_iterated_fraction(schedule);
    auto stat = binomial_z(converted, n, report.overall.analytic_fraction);
    report.overall.std_error = stat.std_error;
    report.overall.z_score = stat.z;
    pass = pass && std::abs(stat.z) <= config.check_tolerance_sigma;
    report.overall.conservation = conservation_check(s, ProtocolId::kProposal1Iterate);

    // Replay the first pairs to show their round-by-round history.
    std::vector<QubitAssistedCnotProtocol> rounds(schedule.begin(), schedule.end());
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(config.trace_limit, config.trials); ++i) {
        RandomStream rng = streams.stream(i);
        TrialTrace trace{i, OutcomeKind::kResidual, std::nullopt, {}};
        for (const auto &round : rounds) {
            ProtocolOutcome outcome = round.run(rng);
            trace.steps.insert(trace.steps.end(), outcome.trace.begin(), outcome.trace.end());
            trace.kind = outcome.kind;
            trace.bell = outcome.bell;
            if (outcome.kind == OutcomeKind::kSuccess) {
                break;
            }
        }
        report.traces.push_back(std::move(trace));
    }
    report.pass = pass;
    return report;
}

}  // namespace

void validate(const CampaignConfig &config, RunMode mode) {
    auto fail = [](const std::string &message) { throw Error(ErrorCode::kInvalidArgument, message); };
    if (!(config.alpha_sq >= 0.5 && config.alpha_sq < 1.0)) {
        fail("alpha-sq must lie in [0.5, 1): alpha is the larger coefficient and beta must be nonzero");
    }
    if (mode == RunMode::kCampaign && config.trials == 0) {
        fail("trials must be at least 1");
    }
    if (config.protocol == ProtocolId::kProposal1Iterate && config.rounds == 0) {
        fail("rounds must be at least 1");
    }
    if (config.protocol == ProtocolId::kCat) {
        if (config.parties < 3 || config.parties > 10) {
            fail("parties must lie in 3..10");
        }
        if (config.actor && *config.actor >= config.parties) {
            fail("actor must be a party index below parties");
        }
    }
    if (!(config.check_tolerance_sigma > 0.0)) {
        fail("the sigma tolerance must be positive");
    }
    if (config.threads == 0) {
        fail("threads must be at least 1");
    }
}

EnsembleReport run_campaign(const CampaignConfig &config) {
    validate(config, RunMode::kCampaign);
    const SchmidtPair s = SchmidtPair::from_alpha_sq(config.alpha_sq);
    if (config.protocol == ProtocolId::kProposal1Iterate) {
        return iterate_campaign(config, s);
    }

    EnsembleReport report;
    report.config = config;
    report.mode = RunMode::kCampaign;
    const std::unique_ptr<Protocol> protocol = make_protocol(config, s);
    const StreamFactory streams(config.seed);

    const auto successes = parallel_tally<std::uint64_t>(
        config.trials, config.threads, 0, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t &count) {
            for (std::uint64_t i = begin; i < end; ++i) {
                RandomStream rng = streams.stream(i);
                if (protocol->run(rng).kind == OutcomeKind::kSuccess) {
                    ++count;
                }
            }
        });

    RoundRow row;
    row.pairs_in = static_cast<double>(config.trials);
    row.successes = static_cast<double>(successes);
    row.empirical_p = row.successes / row.pairs_in;
    row.analytic_p = analytic_success(config, s);
    auto stat = binomial_z(row.successes, row.pairs_in, row.analytic_p);
    row.std_error = stat.std_error;
    row.z_score = stat.z;
    report.rounds.push_back(row);

    report.overall.empirical_fraction = row.empirical_p;
    report.overall.analytic_fraction = row.analytic_p;
    report.overall.std_error = row.std_error;
    report.overall.z_score = row.z_score;
    report.overall.conservation = conservation_check(s, config.protocol, cat_setup(config));

    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(config.trace_limit, config.trials); ++i) {
        RandomStream rng = streams.stream(i);
        report.traces.push_back(to_trace(i, protocol->run(rng)));
    }
    report.pass = std::abs(row.z_score) <= config.check_tolerance_sigma;
    return report;
}

EnsembleReport run_exact(const CampaignConfig &config) {
    validate(config, RunMode::kExact);
    const SchmidtPair s = SchmidtPair::from_alpha_sq(config.alpha_sq);
    EnsembleReport report;
    report.config = config;
    report.mode = RunMode::kExact;
    report.overall.conservation = conservation_check(s, config.protocol, cat_setup(config));
    bool pass = true;

    if (config.protocol == ProtocolId::kProposal1Iterate) {
        // Round recursion driven purely by enumeration: each round starts from
        // the residual pair decoded from the simulated residual branch.
        const std::vector<SchmidtPair> schedule = iteration_schedule(s, config.rounds);
        double remaining = 1.0;
        double converted = 0.0;
        SchmidtPair current = s;
        for (std::size_t r = 0; r < schedule.size(); ++r) {
            double p = 0.0;
            std::optional<SchmidtPair> next;
            for (const auto &branch : enumerate_branches(QubitAssistedCnotProtocol(current))) {
                if (branch.outcome.kind == OutcomeKind::kSuccess) {
                    p += branch.probability;
                } else if (branch.outcome.residual) {
                    next = branch.outcome.residual;
                }
            }
            RoundRow row;
            row.round = r + 1;
            row.pairs_in = remaining;
            row.successes = remaining * p;
            row.empirical_p = p;
            row.analytic_p = cnot_success_probability(schedule[r]);
            row.z_score = std::abs(p - row.analytic_p);
            pass = pass && row.z_score <= kExactTolerance;
            report.rounds.push_back(row);
            converted += row.successes;
            remaining *= 1.0 - p;
            if (!next) {
                break;
            }
            current = *next;
        }
        report.overall.empirical_fraction = converted;
        report.overall.analytic_fraction = analytic_iterated_fraction(schedule);
    } else {
        const std::unique_ptr<Protocol> protocol = make_protocol(config, s);
        double p = 0.0;
        for (const auto &branch : enumerate_branches(*protocol)) {
            BranchRow row;
            row.path = branch_path(branch.outcome);
            row.kind = branch.outcome.kind;
            row.bell = branch.outcome.bell;
            row.probability = branch.probability;
            row.entanglement = shared_entanglement(branch.outcome);
            if (branch.outcome.kind == OutcomeKind::kSuccess) {
                row.fidelity = success_fidelity(branch.outcome);
                p += branch.probability;
                pass = pass && *row.fidelity >= 1.0 - kExactTolerance;
            } else if (branch.outcome.kind == OutcomeKind::kDisentangled) {
                pass = pass && row.entanglement <= kExactTolerance;
            }
            report.branches.push_back(std::move(row));
        }
        RoundRow row;
        row.pairs_in = 1.0;
        row.successes = p;
        row.empirical_p = p;
        row.analytic_p = analytic_success(config, s);
        row.z_score = std::abs(p - row.analytic_p);
        report.rounds.push_back(row);
        report.overall.empirical_fraction = p;
        report.overall.analytic_fraction = row.analytic_p;
    }
    report.overall.z_score = std::abs(report.overall.empirical_fraction - report.overall.analytic_fraction);
    pass = pass && report.overall.z_score <= kExactTolerance;
    pass = pass && report.overall.conservation.deviation() <= kExactTolerance;
    for (const auto &row : report.rounds) {
        pass = pass && row.z_score <= kExactTolerance;
    }
    report.pass = pass;
    return report;
}

}  // namespace concentrate
