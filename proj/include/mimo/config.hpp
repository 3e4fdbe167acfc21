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

#pragma once

// Command-line and config-file front end for the SER simulator.
//
// Settings are resolved in three layers: built-in defaults, then a plain
// `key = value` config file (`#` starts a comment), then command-line flags.
// Keys are the long flag names without the leading dashes.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/sim.hpp"

namespace mimo {

enum class OutputFormat { Csv, Tsv };

struct OutputSettings {
  /// "-" writes to standard output.
  std::string path = "-";
  OutputFormat format = OutputFormat::Csv;
};

struct CliInvocation {
  SimulationConfig config;
  OutputSettings output;
  bool help_requested = false;
  std::string help_text;
};

/// Raised when a results file cannot be written.
class IoError : public Error {
public:
  using Error::Error;
};

/// Keys accepted in config files and as --flags.
std::span<const std::string_view> config_keys() noexcept;

/// Parses argv-style arguments (without the program name).
CliInvocation parse_invocation(std::span<const std::string> args);

/// Builds an invocation from config-file text layered over the defaults.
CliInvocation parse_config_text(std::string_view text);

/// "start:stop:step" (stop included when hit exactly) or a comma list.
/// "inf" denotes the noiseless limit. An empty string gives an empty grid.
std::vector<double> parse_snr_grid(std::string_view text);

/// Full results document: comment header recording the configuration and
/// conventions, the column line, then one row per SerPoint.
std::string format_results(const SerCurve& curve, OutputFormat format);

void write_results(const SerCurve& curve, const OutputSettings& settings);

/// Recovers the config-file text embedded in a results header.
std::string extract_config_from_header(std::string_view results);

} // namespace mimo
