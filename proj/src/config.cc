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

#include <charconv>
#include <fstream>

#include "concentrate/harness.h"

namespace concentrate {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "setting '" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw Error(ErrorCode::kInvalidArgument, "setting '" + std::string(key) + "' expects true or false");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIo, "cannot read config file '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::kInvalidArgument,
                        path + ":" + std::to_string(number) + ": expected key=value, got '" + std::string(view) + "'");
        }
        entries.emplace_back(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
    }
    return entries;
}

void apply_setting(RunSettings &settings, std::string_view raw_key, std::string_view value) {
    std::string key(raw_key);
    for (auto &c : key) {
        if (c == '_') {
            c = '-';
        }
    }
    CampaignConfig &c = settings.campaign;
    if (key == "protocol") {
        c.protocol = parse_protocol_id(value);
    } else if (key == "alpha-sq") {
        c.alpha_sq = parse_number<double>(key, value);
    } else if (key == "trials") {
        c.trials = parse_number<std::uint64_t>(key, value);
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "rounds") {
        c.rounds = parse_number<std::size_t>(key, value);
    } else if (key == "parties") {
        c.parties = parse_number<std::size_t>(key, value);
    } else if (key == "method") {
        c.method = parse_cat_method(value);
    } else if (key == "actor") {
        c.actor = parse_number<std::size_t>(key, value);
    } else if (key == "sigma" || key == "check-tolerance-sigma") {
        c.check_tolerance_sigma = parse_number<double>(key, value);
    } else if (key == "threads") {
        c.threads = parse_number<unsigned>(key, value);
    } else if (key == "trace-limit") {
        c.trace_limit = parse_number<std::size_t>(key, value);
    } else if (key == "format") {
        settings.format = parse_report_format(value);
    } else if (key == "out") {
        settings.out = std::string(value);
    } else if (key == "check") {
        settings.check = parse_bool(key, value);
    } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(raw_key) + "'");
    }
}

}  // namespace concentrate
