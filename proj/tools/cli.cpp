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

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qcg/version.hpp"

namespace qcg::cli {
namespace {

struct Subcommand {
  std::string_view name;
  std::string_view help;
};

constexpr Subcommand kSubcommands[] = {
    {"sweep-tau", "final infidelity against gate duration"},
    {"dynamical", "infidelity along the protocol at fixed duration"},
    {"cost", "time-averaged Hamiltonian norm against duration"},
    {"timing", "final infidelity under over- and under-shoot"},
    {"dephasing", "final infidelity against dephasing strength"},
    {"bloch", "register and ancilla Bloch trajectories"},
    {"sequence", "ground-start then excited-start gate pair"},
    {"cz", "controlled-Z through an ancilla and by inverse engineering"},
    {"validate", "print the resolved configuration and exit"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string valid_key_list() {
  std::string out;
  for (const KeyInfo& k : config_keys()) {
    if (!out.empty()) out += ", ";
    out += k.name;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("'" + t + "' is not a number for key " +
                          std::string(key),
                      std::string(key));
  }
  return v;
}

int parse_int(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("'" + t + "' is not an integer for key " +
                          std::string(key),
                      std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("'" + t + "' is not a boolean for key " +
                        std::string(key) + " (expected true|false)",
                    std::string(key));
}

// "a,b,c", "logspace:lo:hi:n" or "linspace:lo:hi:n"; empty means default.
std::vector<double> parse_grid(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  for (std::string_view kind : {"logspace:", "linspace:"}) {
    if (t.rfind(kind, 0) == 0) {
      const auto parts = split(std::string_view(t).substr(kind.size()), ':');
      if (parts.size() != 3) {
        throw ConfigError(std::string(key) + ": expected " +
                              std::string(kind) + "lo:hi:n",
                          std::string(key));
      }
      const double lo = parse_double(parts[0], key);
      const double hi = parse_double(parts[1], key);
      const int n = parse_int(parts[2], key);
      if (n < 1) {
        throw ConfigError(std::string(key) + ": point count must be >= 1",
                          std::string(key));
      }
      if (kind == "logspace:") {
        if (!(lo > 0.0 && hi > 0.0)) {
          throw ConfigError(std::string(key) + ": logspace bounds must be > 0",
                            std::string(key));
        }
        return logspace(lo, hi, n);
      }
      return linspace(lo, hi, n);
    }
  }
  std::vector<double> out;
  for (const std::string& p : split(t, ',')) out.push_back(parse_double(p, key));
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  for (const std::string& p : split(t, ',')) out.push_back(parse(p));
  return out;
}

std::string_view choice(std::string_view text, std::string_view key,
                        std::initializer_list<std::string_view> options) {
  for (std::string_view o : options) {
    if (text == o) return o;
  }
  std::string list;
  for (std::string_view o : options) {
    if (!list.empty()) list += "|";
    list += o;
  }
  throw ConfigError("unknown " + std::string(key) + " '" + std::string(text) +
                        "' (expected " + list + ")",
                    std::string(key));
}

std::optional<double> json_number(const nlohmann::json& j,
                                  std::string_view key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

void report_failures(const std::vector<SweepRecord>& records,
                     std::ostream& err) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    if (!r.error) continue;
    err << "qcg: row " << i + 1 << " (protocol=" << r.protocol
        << ", ramp=" << r.ramp << ", " << r.param << "="
        << format_double(r.value) << ") failed: " << *r.error << "\n";
  }
}

bool any_failed(const std::vector<SweepRecord>& records) {
  for (const SweepRecord& r : records) {
    if (r.error) return true;
  }
  return false;
}

// Writes `bytes` to stdout or to a file. Returns false if the file cannot
// be written.
bool emit(const std::string& bytes, const std::string& path, std::ostream& out,
          std::ostream& err) {
  if (path == "-") {
    out << bytes;
    out.flush();
    return true;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (file) file << bytes;
  if (file) file.close();
  if (!file) {
    err << "qcg: cannot write output file '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = {
      {"bloch_gamma_tau", "0", "dephasing strength tau*gamma for bloch"},
      {"dephasing_mode", "fixed-tau", "fixed-tau | fixed-gamma"},
      {"epsilon_grid", "", "timing errors; empty: 0..0.3 step 0.01"},
      {"fixed_gamma", "1", "gamma when dephasing_mode = fixed-gamma"},
      {"floquet_harmonic", "odd", "odd | literal-double"},
      {"format", "csv", "csv | json"},
      {"gamma_tau_grid", "", "tau*gamma values; empty: 26 points on [0, 5]"},
      {"gate", "hadamard", "hadamard | rotation"},
      {"ie_dephase_all_qubits", "true",
       "two-qubit IE dephases both qubits (false: the last one only)"},
      {"norm", "trace", "trace | operator | frobenius"},
      {"output", "-", "output path, '-' for stdout"},
      {"protocol", "", "comma list of uncontrolled|cd|fe|ie; empty: default"},
      {"ramp", "", "comma list of linear|polynomial|sinusoidal; empty: default"},
      {"ratio", "200", "Floquet drive frequency over 2 pi / tau"},
      {"record_runtime", "true", "false writes zero runtimes"},
      {"rotation_axis", "0,0,1", "rotation gate axis x,y,z"},
      {"rotation_phase", "3.141592653589793", "rotation gate phase"},
      {"steps_per_unit", "0", "integration steps per tau; 0: default"},
      {"tau", "1", "duration for fixed-duration scenarios"},
      {"tau_grid", "", "durations; list, logspace:lo:hi:n or linspace:lo:hi:n"},
      {"threads", "0", "worker count; 0: hardware (QCG_THREADS caps it)"},
  };
  return keys;
}

ConfigValues default_values() {
  ConfigValues v;
  for (const KeyInfo& k : config_keys()) v[std::string(k.name)] = k.fallback;
  return v;
}

void set_value(ConfigValues& values, std::string_view key,
               std::string_view value) {
  const auto it = values.find(std::string(key));
  if (it == values.end()) {
    throw ConfigError("unknown config key '" + std::string(key) +
                          "'; valid keys: " + valid_key_list(),
                      std::string(key));
  }
  it->second = trim(value);
}

void merge_config_text(ConfigValues& values, std::string_view text,
                       std::string_view source) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    try {
      set_value(values, key, std::string_view(body).substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(number) +
                            ": " + e.what(),
                        e.key());
    }
  }
}

Scenario scenario_for_subcommand(std::string_view name) {
  if (name == "sweep-tau") return Scenario::kDurationSweep;
  if (name == "dynamical") return Scenario::kDynamical;
  if (name == "cost") return Scenario::kCostSweep;
  if (name == "timing") return Scenario::kTimingSweep;
  if (name == "dephasing") return Scenario::kDephasingSweep;
  if (name == "bloch") return Scenario::kBloch;
  if (name == "sequence") return Scenario::kSequence;
  if (name == "cz") return Scenario::kCz;
  throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

Settings resolve(const ConfigValues& values, Scenario scenario) {
  auto get = [&](std::string_view key) -> const std::string& {
    return values.at(std::string(key));
  };
  Settings s;
  ExperimentConfig& c = s.experiment;
  c.scenario = scenario;
  c.protocols = parse_list<ProtocolKind>(get("protocol"), [](const auto& p) {
    return parse_protocol_kind(p);
  });
  c.ramps = parse_list<RampKind>(
      get("ramp"), [](const auto& p) { return parse_ramp_kind(p); });
  c.gate = choice(get("gate"), "gate", {"hadamard", "rotation"}) == "rotation"
               ? GatePreset::kRotation
               : GatePreset::kHadamard;
  const auto axis = parse_grid(get("rotation_axis"), "rotation_axis");
  if (axis.size() != 3) {
    throw ConfigError("rotation_axis needs three components x,y,z",
                      "rotation_axis");
  }
  c.rotation_axis = Axis{axis[0], axis[1], axis[2]};
  c.rotation_phase = parse_double(get("rotation_phase"), "rotation_phase");
  c.tau = parse_double(get("tau"), "tau");
  c.tau_grid = parse_grid(get("tau_grid"), "tau_grid");
  c.epsilon_grid = parse_grid(get("epsilon_grid"), "epsilon_grid");
  c.gamma_tau_grid = parse_grid(get("gamma_tau_grid"), "gamma_tau_grid");
  c.dephasing_mode = choice(get("dephasing_mode"), "dephasing_mode",
                            {"fixed-tau", "fixed-gamma"}) == "fixed-gamma"
                         ? DephasingSweepMode::kFixedGamma
                         : DephasingSweepMode::kFixedTau;
  c.fixed_gamma = parse_double(get("fixed_gamma"), "fixed_gamma");
  c.ratio = parse_double(get("ratio"), "ratio");
  c.harmonic = parse_floquet_harmonic(get("floquet_harmonic"));
  c.norm = parse_norm_kind(get("norm"));
  c.steps_per_unit = parse_int(get("steps_per_unit"), "steps_per_unit");
  c.bloch_gamma_tau = parse_double(get("bloch_gamma_tau"), "bloch_gamma_tau");
  c.ie_dephase_all_qubits =
      parse_bool(get("ie_dephase_all_qubits"), "ie_dephase_all_qubits");
  c.record_runtime = parse_bool(get("record_runtime"), "record_runtime");
  c.threads = parse_int(get("threads"), "threads");
  if (c.threads < 0) throw ConfigError("threads must be >= 0", "threads");
  s.format = std::string(choice(get("format"), "format", {"csv", "json"}));
  s.output = get("output");
  if (s.output.empty()) throw ConfigError("output must not be empty", "output");
  c.validate();
  return s;
}

std::string render_config(const ConfigValues& values) {
  std::string out;
  for (const auto& [k, v] : values) out += k + " = " + v + "\n";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  if (records.empty()) {
    throw std::invalid_argument("refusing to write an empty record list");
  }
  out << kCsvHeader << "\n";
  for (const SweepRecord& r : records) {
    out << r.scenario << ',' << r.protocol << ',' << r.ramp << ',' << r.param
        << ',' << format_double(r.value) << ','
        << (r.infidelity ? format_double(*r.infidelity) : "") << ','
        << (r.cost ? format_double(*r.cost) : "") << ','
        << format_double(r.runtime_seconds) << "\n";
  }
}

void write_bloch_csv(const BlochResult& result, std::ostream& out) {
  if (result.samples.empty()) {
    throw std::invalid_argument("refusing to write an empty trajectory");
  }
  out << kBlochCsvHeader << "\n";
  for (const BlochSample& s : result.samples) {
    out << "bloch," << s.track << ',' << format_double(s.t) << ','
        << format_double(s.r.x) << ',' << format_double(s.r.y) << ','
        << format_double(s.r.z) << "\n";
  }
}

nlohmann::json to_json(const SweepRecord& r) {
  nlohmann::json j = {
      {"scenario", r.scenario}, {"protocol", r.protocol},
      {"ramp", r.ramp},         {"param", r.param},
      {"value", r.value},       {"runtime_seconds", r.runtime_seconds},
  };
  j["infidelity"] =
      r.infidelity ? nlohmann::json(*r.infidelity) : nlohmann::json(nullptr);
  j["cost"] = r.cost ? nlohmann::json(*r.cost) : nlohmann::json(nullptr);
  if (r.error) j["error"] = *r.error;
  return j;
}

SweepRecord record_from_json(const nlohmann::json& j) {
  SweepRecord r;
  r.scenario = j.at("scenario").get<std::string>();
  r.protocol = j.at("protocol").get<std::string>();
  r.ramp = j.at("ramp").get<std::string>();
  r.param = j.at("param").get<std::string>();
  r.value = j.at("value").get<double>();
  r.runtime_seconds = j.at("runtime_seconds").get<double>();
  r.infidelity = json_number(j, "infidelity");
  r.cost = json_number(j, "cost");
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

nlohmann::json records_document(const ConfigValues& values,
                                const std::vector<SweepRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("refusing to write an empty record list");
  }
  nlohmann::json doc;
  doc["library"] = "qcg";
  doc["version"] = std::string(kVersion);
  doc["config"] = values;
  doc["records"] = nlohmann::json::array();
  for (const SweepRecord& r : records) doc["records"].push_back(to_json(r));
  return doc;
}

std::vector<SweepRecord> records_from_document(const nlohmann::json& doc) {
  std::vector<SweepRecord> out;
  for (const auto& j : doc.at("records")) out.push_back(record_from_json(j));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"qcg: controlled quantum gate simulations", "qcg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.footer("Settings are key=value pairs: pass them in a --config file or "
             "as --key=value. Run `qcg validate` to list them.");

  std::string config_path;
  bool quiet = false;
  std::vector<CLI::App*> subs;
  for (const Subcommand& s : kSubcommands) {
    CLI::App* sub = app.add_subcommand(std::string(s.name), std::string(s.help));
    sub->allow_extras();
    sub->add_option("-c,--config", config_path, "key=value config file");
    sub->add_flag("-q,--quiet", quiet, "no progress lines on stderr");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  ConfigValues values = default_values();
  Settings settings;
  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) {
        throw ConfigError("cannot read config file '" + config_path + "'",
                          "config");
      }
      std::ostringstream text;
      text << file.rdbuf();
      merge_config_text(values, text.str(), config_path);
    }
    for (const std::string& extra : sub->remaining()) {
      if (extra.rfind("--", 0) != 0 || extra.find('=') == std::string::npos) {
        throw ConfigError("unexpected argument '" + extra +
                          "' (settings take the form --key=value)");
      }
      const auto eq = extra.find('=');
      set_value(values, extra.substr(2, eq - 2), extra.substr(eq + 1));
    }
    const Scenario scenario = name == "validate"
                                  ? Scenario::kDurationSweep
                                  : scenario_for_subcommand(name);
    settings = resolve(values, scenario);
  } catch (const ConfigError& e) {
    err << "qcg: config error";
    if (!e.key().empty()) err << " in '" << e.key() << "'";
    err << ": " << e.what() << "\n";
    return 2;
  }

  if (name == "validate") {
    out << render_config(values);
    return 0;
  }

  const ExperimentConfig& cfg = settings.experiment;
  const auto start = std::chrono::steady_clock::now();
  std::string bytes;
  bool failed = false;
  try {
    if (cfg.scenario == Scenario::kBloch) {
      const BlochResult result = run_bloch(cfg);
      if (settings.format == "json") {
        nlohmann::json doc;
        doc["library"] = "qcg";
        doc["version"] = std::string(kVersion);
        doc["config"] = values;
        doc["samples"] = nlohmann::json::array();
        for (const BlochSample& s : result.samples) {
          doc["samples"].push_back(
              {{"track", s.track}, {"t", s.t}, {"x", s.r.x}, {"y", s.r.y},
               {"z", s.r.z}});
        }
        bytes = doc.dump(2) + "\n";
      } else {
        std::ostringstream buf;
        write_bloch_csv(result, buf);
        bytes = buf.str();
      }
    } else {
      std::vector<SweepRecord> records;
      if (cfg.scenario == Scenario::kSequence) {
        const SequenceResult seq = run_sequence(cfg);
        records = seq.records;
        if (!quiet) {
          err << "qcg: sequence register overlap "
              << format_double(seq.register_overlap) << ", ancilla <0|rho|0> "
              << format_double(seq.auxiliary_overlap) << "\n";
        }
      } else {
        records = run_scenario(cfg);
      }
      if (settings.format == "json") {
        bytes = records_document(values, records).dump(2) + "\n";
      } else {
        std::ostringstream buf;
        write_csv(records, buf);
        bytes = buf.str();
      }
      failed = any_failed(records);
      if (failed) report_failures(records, err);
    }
  } catch (const ConfigError& e) {
    err << "qcg: config error";
    if (!e.key().empty()) err << " in '" << e.key() << "'";
    err << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "qcg: " << name << " failed: " << e.what() << "\n";
    return 1;
  }

  if (!emit(bytes, settings.output, out, err)) return 1;
  if (!quiet) {
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    err << "qcg: " << name << " done in " << std::fixed
        << std::setprecision(2) << secs << " s\n";
  }
  return failed ? 1 : 0;
}

}  // namespace qcg::cli
