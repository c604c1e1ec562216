// Copyright 2026 The tcqkd Authors
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

#ifndef TCQKD_CLI_SERIALIZATION_H
#define TCQKD_CLI_SERIALIZATION_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tcqkd/session.h"

namespace tcqkd::cli {

/// Raised for malformed or invalid configuration and report documents. The
/// message starts with the dotted path of the offending field when there is
/// one, e.g. "channel.transmittance: must be in [0, 1], got 1.5".
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Strict: unknown fields are rejected, missing fields take the defaults of
/// SessionConfig, and the result is validated.
SessionConfig config_from_json(const nlohmann::json &j);
SessionConfig parse_config(std::string_view text);
nlohmann::json config_to_json(const SessionConfig &cfg);

nlohmann::json report_to_json(const SessionReport &report);
SessionReport report_from_json(const nlohmann::json &j);
SessionReport parse_report(std::string_view text);

/// Pretty-printed report followed by a newline.
std::string dump_report(const SessionReport &report);

/// Doubles in CSV cells are written with 17 significant digits.
std::string format_double(double v);

std::string_view decision_name(Decision d);
std::string_view eve_strategy_name(const EveStrategy &eve);

}  // namespace tcqkd::cli

#endif  // TCQKD_CLI_SERIALIZATION_H
