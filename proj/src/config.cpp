/*
 * Copyright 2026 The mimo-detect Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mimo/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

namespace mimo {

namespace {

using Settings = std::map<std::string, std::string, std::less<>>;

constexpr std::array<std::string_view, 15> kKeys = {
    "nt",      "nr",         "mod",  "detectors", "snr-db",     "trials",   "min-errors", "rho",
    "seed",    "threads",    "out",  "format",    "freeze-h",   "batch-size", "ml-guard"};

Settings defaults() {
  return {
      {"nt", "4"},
      {"nr", "4"},
      {"mod", "4qam"},
      {"detectors", "zf,mmse,vblast-zf,vblast-mmse"},
      {"snr-db", "0:20:2"},
      {"trials", "100000"},
      {"min-errors", "200"},
      {"rho", "0"},
      {"seed", "1"},
      {"threads", "1"},
      {"out", "-"},
      {"format", "csv"},
      {"freeze-h", "none"},
      {"batch-size", std::to_string(SimulationConfig::kDefaultBatchSize)},
      {"ml-guard", std::to_string(DetectorSpec::kDefaultMlGuard)},
  };
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

bool is_known_key(std::string_view key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

void apply_text(Settings& settings, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                                std::string(line) + "'");
    }
    const std::string key = normalize_key(line.substr(0, eq));
    if (!is_known_key(key)) {
      throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
    }
    settings[key] = std::string(trim(line.substr(eq + 1)));
  }
}

template <typename T>
T parse_integer(const Settings& s, std::string_view key) {
  const std::string& text = s.find(key)->second;
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::string_view key) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto end = text.find(sep, pos);
    parts.push_back(trim(text.substr(pos, end == std::string_view::npos ? end : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return parts;
}

CliInvocation build(const Settings& s) {
  CliInvocation inv;
  SimulationConfig& cfg = inv.config;
  cfg.nt = parse_integer<unsigned>(s, "nt");
  cfg.nr = parse_integer<unsigned>(s, "nr");
  cfg.modulation = s.find("mod")->second;
  cfg.snr_grid_db = parse_snr_grid(s.find("snr-db")->second);
  cfg.max_channel_uses = parse_integer<std::uint64_t>(s, "trials");
  cfg.min_errors = parse_integer<std::uint64_t>(s, "min-errors");
  cfg.rho = parse_real(s.find("rho")->second, "rho");
  cfg.seed = parse_integer<std::uint64_t>(s, "seed");
  cfg.threads = parse_integer<unsigned>(s, "threads");
  cfg.batch_size = parse_integer<std::uint64_t>(s, "batch-size");

  const auto guard = parse_integer<std::uint64_t>(s, "ml-guard");
  for (const std::string_view name : split(s.find("detectors")->second, ',')) {
    if (name.empty()) throw ConfigError("detectors", "empty detector name");
    cfg.detectors.push_back(DetectorSpec{parse_algorithm(name), guard});
  }

  const std::string& freeze = s.find("freeze-h")->second;
  if (freeze == "none") {
    cfg.freeze_h = FrozenChannel::None;
  } else if (freeze == "identity") {
    cfg.freeze_h = FrozenChannel::Identity;
  } else {
    throw ConfigError("freeze-h", "expected 'none' or 'identity', got '" + freeze + "'");
  }

  inv.output.path = s.find("out")->second;
  const std::string& format = s.find("format")->second;
  if (format == "csv") {
    inv.output.format = OutputFormat::Csv;
  } else if (format == "tsv") {
    inv.output.format = OutputFormat::Tsv;
  } else {
    throw ConfigError("format", "expected 'csv' or 'tsv', got '" + format + "'");
  }

  cfg.validate();
  return inv;
}

} // namespace

std::span<const std::string_view> config_keys() noexcept { return kKeys; }

std::vector<double> parse_snr_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> grid;
  if (text.empty()) return grid;

  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw ConfigError("snr-db", "range must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_real(parts[0], "snr-db");
    const double stop = parse_real(parts[1], "snr-db");
    const double step = parse_real(parts[2], "snr-db");
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
      throw ConfigError("snr-db", "range needs finite bounds and a positive step");
    }
    const double slack = 1e-9 * step;
    for (std::size_t k = 0;; ++k) {
      const double v = start + static_cast<double>(k) * step;
      if (v > stop + slack) break;
      grid.push_back(v);
    }
    return grid;
  }

  for (const std::string_view part : split(text, ',')) {
    grid.push_back(parse_real(part, "snr-db"));
  }
  return grid;
}

CliInvocation parse_config_text(std::string_view text) {
  Settings s = defaults();
  apply_text(s, text);
  return build(s);
}

CliInvocation parse_invocation(std::span<const std::string> args) {
  CLI::App app{"Monte Carlo symbol-error-rate simulator for MIMO detectors", "mimo-sim"};
  app.option_defaults()->always_capture_default(false);

  std::string config_path;
  app.add_option("--config", config_path, "Config file with 'key = value' lines");

  const Settings base = defaults();
  std::map<std::string, std::string> flags;
  const std::map<std::string_view, std::string_view> help = {
      {"nt", "Transmit antennas"},
      {"nr", "Receive antennas (>= nt)"},
      {"mod", "Modulation: 4qam, qpsk, 16qam, 64qam"},
      {"detectors", "Comma list of zf, mmse, ml, sphere, vblast-zf, vblast-mmse"},
      {"snr-db", "SNR grid in dB: start:stop:step or a comma list"},
      {"trials", "Maximum channel uses per SNR point"},
      {"min-errors", "Early-stop error target per detector (0 disables)"},
      {"rho", "Exponential antenna correlation at both ends, in [0, 1)"},
      {"seed", "Random seed"},
      {"threads", "OpenMP worker threads"},
      {"out", "Output path, '-' for stdout"},
      {"format", "csv or tsv"},
      {"freeze-h", "none, or identity to replace the channel by I"},
      {"batch-size", "Channel uses between early-stop checks"},
      {"ml-guard", "Largest candidate count the exhaustive ML search accepts"},
  };
  for (const std::string_view key : kKeys) {
    const std::string k(key);
    app.add_option("--" + k, flags[k], std::string(help.at(key)) + " [" + base.at(k) + "]");
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    CliInvocation inv;
    inv.help_requested = true;
    inv.help_text = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("", e.what());
  }

  Settings s = base;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_text(s, text.str());
  }
  for (const std::string_view key : kKeys) {
    const std::string k(key);
    if (app.get_option("--" + k)->count() > 0) s[k] = flags[k];
  }
  return build(s);
}

} // namespace mimo
