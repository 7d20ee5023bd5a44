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

// Command-line driver: seeded Monte Carlo campaigns (`run`) and exhaustive
// branch enumeration (`exact`) for the concentration protocols.
//
// Exit codes: 0 pass (or no --check), 1 check failed, 2 usage or I/O error.

#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "concentrate/harness.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("concentrate");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char *level = std::getenv("CONCENTRATE_LOG");
    const std::string name = level ? level : "error";
    if (name == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (name == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
    }
}

// Flag values as given on the command line, keyed by setting name.
using FlagValues = std::map<std::string, std::optional<std::string>>;

void add_common_flags(CLI::App *cmd, FlagValues &flags, std::optional<std::string> &config_path, bool &check,
                      bool with_sampling) {
    cmd->add_option("--config", config_path, "key=value config file; flags override it");
    cmd->add_option("--protocol", flags["protocol"], "proposal1 | proposal1-iterate | proposal2 | ent-assisted | cat");
    cmd->add_option("--alpha-sq", flags["alpha-sq"], "alpha^2 of the input pair, in [0.5, 1)");
    if (with_sampling) {
        cmd->add_option("--trials", flags["trials"], "number of pairs / trials");
        cmd->add_option("--seed", flags["seed"], "64-bit seed");
        cmd->add_option("--threads", flags["threads"], "worker threads (results do not depend on it)");
        cmd->add_option("--trace-limit", flags["trace-limit"], "number of per-trial traces to keep");
        cmd->add_option("--sigma", flags["sigma"], "z-score tolerance for the verdict (default 4)");
    }
    cmd->add_option("--rounds", flags["rounds"], "rounds for proposal1-iterate");
    cmd->add_option("--parties", flags["parties"], "parties for cat");
    cmd->add_option("--method", flags["method"], "proposal1 | proposal2 (cat only)");
    cmd->add_option("--actor", flags["actor"], "index of the acting party (cat only)");
    cmd->add_option("--format", flags["format"], "json | csv");
    cmd->add_option("--out", flags["out"], "output path (default: standard output)");
    cmd->add_flag("--check", check, "exit with status 1 when the verdict is fail");
}

concentrate::RunSettings collect(const FlagValues &flags, const std::optional<std::string> &config_path, bool check) {
    concentrate::RunSettings settings;
    if (config_path) {
        for (const auto &[key, value] : concentrate::read_config_file(*config_path)) {
            spdlog::debug("config {} = {}", key, value);
            concentrate::apply_setting(settings, key, value);
        }
    }
    for (const auto &[key, value] : flags) {
        if (value) {
            concentrate::apply_setting(settings, key, *value);
        }
    }
    if (check) {
        settings.check = true;
    }
    return settings;
}

}  // namespace

int main(int argc, char **argv) {
    configure_logging();

    CLI::App app{"Entanglement concentration protocol simulator"};
    app.require_subcommand(1);

    FlagValues run_flags;
    FlagValues exact_flags;
    std::optional<std::string> run_config;
    std::optional<std::string> exact_config;
    bool run_check = false;
    bool exact_check = false;
    CLI::App *run = app.add_subcommand("run", "seeded Monte Carlo campaign");
    CLI::App *exact = app.add_subcommand("exact", "exhaustive branch enumeration");
    add_common_flags(run, run_flags, run_config, run_check, true);
    add_common_flags(exact, exact_flags, exact_config, exact_check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    const bool is_run = run->parsed();
    try {
        concentrate::RunSettings settings = is_run ? collect(run_flags, run_config, run_check)
                                                   : collect(exact_flags, exact_config, exact_check);
        spdlog::info("{} {} alpha_sq={} trials={} seed={}", is_run ? "run" : "exact",
                     concentrate::to_string(settings.campaign.protocol), settings.campaign.alpha_sq,
                     settings.campaign.trials, settings.campaign.seed);
        concentrate::EnsembleReport report = is_run ? concentrate::run_campaign(settings.campaign)
                                                    : concentrate::run_exact(settings.campaign);
        concentrate::emit_report(report, settings.format, settings.out);
        spdlog::info("verdict: {}", report.pass ? "pass" : "fail");
        if (settings.check && !report.pass) {
            return kExitCheckFailed;
        }
        return kExitPass;
    } catch (const concentrate::Error &e) {
        spdlog::error("{}", e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        spdlog::error("unexpected failure: {}", e.what());
        return kExitUsage;
    }
}
