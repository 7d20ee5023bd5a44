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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "concentrate/harness.h"
#include "json.hpp"

namespace concentrate {

namespace {

using Json = nlohmann::ordered_json;

std::string format12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

// JSON numbers carry 12 significant digits: round-trip through the decimal
// form so the serializer's shortest representation matches it.
Json number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return std::strtod(format12(value).c_str(), nullptr);
}

Json optional_bell(const std::optional<BellKind> &bell) {
    return bell ? Json(std::string(to_string(*bell))) : Json(nullptr);
}

Json config_json(const CampaignConfig &c, RunMode mode) {
    Json j;
    j["protocol"] = std::string(to_string(c.protocol));
    j["alpha_sq"] = number(c.alpha_sq);
    if (mode == RunMode::kCampaign) {
        j["trials"] = c.trials;
        j["seed"] = c.seed;
    }
    if (c.protocol == ProtocolId::kProposal1Iterate) {
        j["rounds"] = c.rounds;
    }
    if (c.protocol == ProtocolId::kCat) {
        j["parties"] = c.parties;
        j["method"] = std::string(to_string(c.method));
        j["actor"] = c.actor ? Json(*c.actor) : Json(nullptr);
    }
    j["check_tolerance_sigma"] = number(c.check_tolerance_sigma);
    return j;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") {
        return ReportFormat::kJson;
    }
    if (text == "csv") {
        return ReportFormat::kCsv;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string render_json(const EnsembleReport &report) {
    Json j;
    j["config"] = config_json(report.config, report.mode);
    j["mode"] = report.mode == RunMode::kCampaign ? "campaign" : "exact";
    j["check_statistic"] = report.mode == RunMode::kCampaign ? "z_score" : "abs_deviation";
    Json rounds = Json::array();
    for (const auto &r : report.rounds) {
        rounds.push_back({{"round", r.round},
                          {"pairs_in", number(r.pairs_in)},
                          {"successes", number(r.successes)},
                          {"empirical_p", number(r.empirical_p)},
                          {"std_error", number(r.std_error)},
                          {"analytic_p", number(r.analytic_p)},
                          {"z_score", number(r.z_score)}});
    }
    j["rounds"] = std::move(rounds);
    const auto &o = report.overall;
    j["overall"] = {{"empirical_fraction", number(o.empirical_fraction)},
                    {"analytic_fraction", number(o.analytic_fraction)},
                    {"std_error", number(o.std_error)},
                    {"z_score", number(o.z_score)},
                    {"conservation",
                     {{"e_before", number(o.conservation.e_before)}, {"e_after", number(o.conservation.e_after)}}}};
    if (report.mode == RunMode::kExact) {
        Json branches = Json::array();
        for (const auto &b : report.branches) {
            branches.push_back({{"path", b.path},
                                {"kind", std::string(to_string(b.kind))},
                                {"bell", optional_bell(b.bell)},
                                {"probability", number(b.probability)},
                                {"entanglement", number(b.entanglement)},
                                {"fidelity", b.fidelity ? number(*b.fidelity) : Json(nullptr)}});
        }
        j["branches"] = std::move(branches);
    } else {
        Json traces = Json::array();
        for (const auto &t : report.traces) {
            Json steps = Json::array();
            for (const auto &s : t.steps) {
                steps.push_back({{"actor", s.actor},
                                 {"step", s.step},
                                 {"outcome", s.outcome},
                                 {"probability", number(s.probability)}});
            }
            traces.push_back({{"trial", t.trial},
                              {"kind", std::string(to_string(t.kind))},
                              {"bell", optional_bell(t.bell)},
                              {"steps", std::move(steps)}});
        }
        j["traces"] = std::move(traces);
    }
    j["verdict"] = report.pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string render_csv(const EnsembleReport &report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &r : report.rounds) {
        out += std::to_string(r.round);
        for (double v : {r.pairs_in, r.successes, r.empirical_p, r.std_error, r.analytic_p, r.z_score}) {
            out += ',';
            out += format12(v);
        }
        out += '\n';
    }
    return out;
}

void emit_report(const EnsembleReport &report, ReportFormat format, const std::optional<std::string> &path) {
    const std::string text = format == ReportFormat::kJson ? render_json(report) : render_csv(report);
    if (!path || path->empty()) {
        std::cout << text << std::flush;
        if (!std::cout) {
            throw Error(ErrorCode::kIo, "failed to write report to standard output");
        }
        return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::kIo, "cannot open '" + *path + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw Error(ErrorCode::kIo, "failed writing '" + *path + "'");
    }
}

}  // namespace concentrate
