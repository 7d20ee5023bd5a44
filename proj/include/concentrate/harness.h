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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concentrate/analytics.h"
#include "concentrate/protocols.h"

namespace concentrate {

struct CampaignConfig {
    ProtocolId protocol = ProtocolId::kProposal2;
    double alpha_sq = 0.75;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t rounds = 6;   // proposal1-iterate
    std::size_t parties = 3;  // cat
    CatMethod method = CatMethod::kProposal2;
    std::optional<std::size_t> actor;  // cat
    double check_tolerance_sigma = 4.0;
    /// Worker threads. Never changes any reported number.
    unsigned threads = 1;
    /// Per-trial traces kept in a campaign report (the first N trials).
    std::size_t trace_limit = 8;
};

enum class RunMode { kCampaign, kExact };

/// Throws Error(kInvalidArgument) for out-of-range or inconsistent settings.
void validate(const CampaignConfig &config, RunMode mode);

struct RoundRow {
    std::size_t round = 1;
    /// Counts in a campaign; expected fractions of the initial ensemble in an
    /// exact run.
    double pairs_in = 0.0;
    double successes = 0.0;
    double empirical_p = 0.0;
    double std_error = 0.0;
    double analytic_p = 0.0;
    /// z-score in a campaign; absolute deviation from analytic_p in an exact run.
    double z_score = 0.0;
};

struct BranchRow {
    std::string path;
    OutcomeKind kind = OutcomeKind::kDisentangled;
    std::optional<BellKind> bell;
    double probability = 0.0;
    double entanglement = 0.0;
    std::optional<double> fidelity;
};

struct TrialTrace {
    std::uint64_t trial = 0;
    OutcomeKind kind = OutcomeKind::kDisentangled;
    std::optional<BellKind> bell;
    std::vector<TraceEntry> steps;
};

struct OverallSummary {
    double empirical_fraction = 0.0;
    double analytic_fraction = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    ConservationReport conservation;
};

struct EnsembleReport {
    CampaignConfig config;
    RunMode mode = RunMode::kCampaign;
    std::vector<RoundRow> rounds;
    OverallSummary overall;
    std::vector<BranchRow> branches;  // exact runs
    std::vector<TrialTrace> traces;   // campaigns
    bool pass = false;
};

inline constexpr double kExactTolerance = 1e-10;

/// Seeded Monte Carlo. Trial i draws from stream (seed, i).
EnsembleReport run_campaign(const CampaignConfig &config);

/// Exhaustive branch enumeration; no randomness.
EnsembleReport run_exact(const CampaignConfig &config);

enum class ReportFormat { kJson, kCsv };

ReportFormat parse_report_format(std::string_view text);

/// JSON object mirroring EnsembleReport, numbers at 12 significant digits.
std::string render_json(const EnsembleReport &report);
/// Header plus one row per round.
std::string render_csv(const EnsembleReport &report);

inline constexpr std::string_view kCsvHeader = "round,pairs_in,successes,empirical_p,std_error,analytic_p,z_score";

/// Writes to `path`, or standard output when empty. Throws Error(kIo).
void emit_report(const EnsembleReport &report, ReportFormat format, const std::optional<std::string> &path);

/// Everything the command line controls.
struct RunSettings {
    CampaignConfig campaign;
    ReportFormat format = ReportFormat::kJson;
    std::optional<std::string> out;
    bool check = false;
};

/// Flat key=value file; '#' starts a comment; blank lines ignored. Throws
/// Error(kIo) if unreadable, Error(kInvalidArgument) on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path);

/// Applies one setting by its command-line name without dashes, e.g.
/// "alpha-sq" (underscores are accepted too). Throws Error(kInvalidArgument).
void apply_setting(RunSettings &settings, std::string_view key, std::string_view value);

}  // namespace concentrate
