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

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace mimo {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string snr_list(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ',';
    out += fmt17(grid[i]);
  }
  return out;
}

std::uint64_t ml_guard_of(const SimulationConfig& cfg) {
  for (const DetectorSpec& d : cfg.detectors) {
    if (d.algorithm == Algorithm::Ml) return d.ml_candidate_guard;
  }
  return DetectorSpec::kDefaultMlGuard;
}

} // namespace

std::string format_results(const SerCurve& curve, OutputFormat format) {
  const SimulationConfig& cfg = curve.config;
  const char sep = format == OutputFormat::Csv ? ',' : '\t';

  std::string detectors;
  for (std::size_t i = 0; i < cfg.detectors.size(); ++i) {
    if (i) detectors += ',';
    detectors += algorithm_name(cfg.detectors[i].algorithm);
  }

  std::string out;
  out += "# mimo-sim symbol error rate results\n";
  out += "# @snr_convention: average received SNR per receive antenna; "
         "sigma2 = nt / 10^(snr_db/10) with unit-energy symbols and CN(0,1) channel gains\n";
  out += "# @ser_convention: per scalar layer, ser = symbol_errors / (nt * channel_uses); "
         "ci95 is the Wilson score interval\n";
  out += "# @channel: Rayleigh flat fading redrawn every channel use; rho > 0 applies "
         "exponential correlation rho^|i-j| at both ends\n";
  out += "# @resampled_draws: " + std::to_string(curve.resampled_draws) + "\n";
  out += "# nt = " + std::to_string(cfg.nt) + "\n";
  out += "# nr = " + std::to_string(cfg.nr) + "\n";
  out += "# mod = " + cfg.modulation + "\n";
  out += "# detectors = " + detectors + "\n";
  out += "# snr-db = " + snr_list(cfg.snr_grid_db) + "\n";
  out += "# trials = " + std::to_string(cfg.max_channel_uses) + "\n";
  out += "# min-errors = " + std::to_string(cfg.min_errors) + "\n";
  out += "# rho = " + fmt17(cfg.rho) + "\n";
  out += "# seed = " + std::to_string(cfg.seed) + "\n";
  out += "# batch-size = " + std::to_string(cfg.batch_size) + "\n";
  out += "# ml-guard = " + std::to_string(ml_guard_of(cfg)) + "\n";
  out += std::string("# freeze-h = ") +
         (cfg.freeze_h == FrozenChannel::Identity ? "identity" : "none") + "\n";

  constexpr std::array<std::string_view, 7> columns = {
      "snr_db", "detector", "channel_uses", "symbol_errors", "ser", "ci95_lo", "ci95_hi"};
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += sep;
    out += columns[i];
  }
  out += '\n';

  for (const SerPoint& p : curve.points) {
    out += fmt17(p.snr_db);
    out += sep;
    out += algorithm_name(p.detector);
    out += sep;
    out += std::to_string(p.channel_uses);
    out += sep;
    out += std::to_string(p.symbol_errors);
    out += sep;
    out += fmt17(p.ser);
    out += sep;
    out += fmt17(p.ci95_lo);
    out += sep;
    out += fmt17(p.ci95_hi);
    out += '\n';
  }
  return out;
}

void write_results(const SerCurve& curve, const OutputSettings& settings) {
  const std::string text = format_results(curve, settings.format);
  if (settings.path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("cannot write results to standard output");
    return;
  }
  std::ofstream out(settings.path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + settings.path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + settings.path + "'");
}

std::string extract_config_from_header(std::string_view results) {
  std::string config;
  std::size_t pos = 0;
  while (pos < results.size()) {
    const auto end = std::min(results.find('\n', pos), results.size());
    const std::string_view line = results.substr(pos, end - pos);
    pos = end + 1;
    if (!line.starts_with('#')) break;
    if (line.starts_with("# ") && line.find(" = ") != std::string_view::npos &&
        !line.starts_with("# @")) {
      config += line.substr(2);
      config += '\n';
    }
  }
  return config;
}

} // namespace mimo
