// Copyright 2026 The QCG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Front end for the qcg tool: config layering, dispatch and output.
//
// Config files are flat `key = value` lines; '#' starts a comment. The
// resolved configuration is defaults, then the file, then `--key=value`
// overrides from the command line.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcg/experiments.hpp"

namespace qcg::cli {

inline constexpr std::string_view kCsvHeader =
    "scenario,protocol,ramp,param,value,infidelity,cost,runtime_seconds";
inline constexpr std::string_view kBlochCsvHeader = "scenario,track,t,x,y,z";

struct KeyInfo {
  std::string_view name;
  std::string_view fallback;  ///< default value as text
  std::string_view help;
};

const std::vector<KeyInfo>& config_keys();

/// Raw key -> text map; always holds every key.
using ConfigValues = std::map<std::string, std::string>;

ConfigValues default_values();

/// Layers `key = value` lines over `values`. Unknown keys and malformed
/// lines throw ConfigError; `source` prefixes diagnostics.
void merge_config_text(ConfigValues& values, std::string_view text,
                       std::string_view source);
void set_value(ConfigValues& values, std::string_view key,
               std::string_view value);

struct Settings {
  ExperimentConfig experiment;
  std::string format;  ///< "csv" | "json"
  std::string output;  ///< path, or "-" for stdout
};

/// Typed view of `values` for one scenario. Throws ConfigError.
Settings resolve(const ConfigValues& values, Scenario scenario);

/// Scenario behind a subcommand name; throws ConfigError for unknown names.
Scenario scenario_for_subcommand(std::string_view name);

/// The resolved config, one `key = value` per line in key order.
std::string render_config(const ConfigValues& values);

/// 17 significant digits, '.' decimal separator, no locale.
std::string format_double(double v);

/// Throws std::invalid_argument on an empty record list.
void write_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void write_bloch_csv(const BlochResult& result, std::ostream& out);

nlohmann::json to_json(const SweepRecord& r);
SweepRecord record_from_json(const nlohmann::json& j);

/// {"library", "version", "config", "records"}. Throws on empty records.
nlohmann::json records_document(const ConfigValues& values,
                                const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_document(const nlohmann::json& doc);

/// Full entry point. Returns 0, 1 (numerical or I/O failure) or 2 (config).
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qcg::cli
