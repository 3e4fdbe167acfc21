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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mimo/channel.hpp"
#include "mimo/detect.hpp"
#include "mimo/modem.hpp"

namespace mimo {

enum class FrozenChannel { None, Identity };

struct SimulationConfig {
  static constexpr std::uint64_t kDefaultBatchSize = 1024;

  unsigned nt = 4;
  unsigned nr = 4;
  /// One of 4qam, qpsk, 16qam, 64qam.
  std::string modulation = "4qam";
  std::vector<DetectorSpec> detectors;
  std::vector<double> snr_grid_db;
  double rho = 0.0;
  std::uint64_t max_channel_uses = 100000;
  /// Stop a point once every detector has this many errors; 0 disables.
  std::uint64_t min_errors = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t batch_size = kDefaultBatchSize;
  FrozenChannel freeze_h = FrozenChannel::None;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  Constellation constellation() const { return Constellation::from_name(modulation); }
  ChannelModel channel_model() const { return ChannelModel::with_rho(nt, nr, rho); }
};

struct SerPoint {
  double snr_db = 0.0;
  Algorithm detector = Algorithm::Zf;
  std::uint64_t channel_uses = 0;
  std::uint64_t symbol_errors = 0;
  double ser = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
};

struct SerCurve {
  SimulationConfig config;
  /// SNR-major, detectors in configuration order.
  std::vector<SerPoint> points;
  /// Channel draws rejected as rank deficient and redrawn.
  std::uint64_t resampled_draws = 0;

  const SerPoint& at(double snr_db, Algorithm detector) const;
};

/// Outcome of one transmission of an nt-symbol vector through all detectors.
struct ChannelUseOutcome {
  /// Wrong scalar symbols per configured detector, each in [0, nt].
  std::vector<std::uint32_t> errors;
  std::uint32_t resamples = 0;
};

struct BatchTally {
  std::vector<std::uint64_t> errors;
  std::uint64_t channel_uses = 0;
  std::uint64_t resamples = 0;

  void add(const ChannelUseOutcome& o);
  void merge(const BatchTally& other);
};

/// Per-configuration state shared by every channel use.
class LinkSimulator {
public:
  static constexpr unsigned kMaxRedraws = 32;

  explicit LinkSimulator(SimulationConfig cfg);

  const SimulationConfig& config() const noexcept { return cfg_; }
  const Constellation& constellation() const noexcept { return constellation_; }

  /// Draws symbols, channel and noise from the stream keyed by
  /// (seed, use_index), so every SNR point and every detector sees the same
  /// realizations up to the noise scale. A rank-deficient channel is redrawn
  /// from the next substream and counted in `resamples`.
  ChannelUseOutcome run_channel_use(double snr_db, std::uint64_t use_index) const;

  /// Reference kernel: channel uses [first, first + count) in order.
  BatchTally run_batch_serial(double snr_db, std::uint64_t first, std::uint64_t count) const;
  /// OpenMP kernel over the same range. Results equal the serial kernel for
  /// any thread count.
  BatchTally run_batch_parallel(double snr_db, std::uint64_t first, std::uint64_t count,
                                unsigned threads) const;

private:
  SimulationConfig cfg_;
  Constellation constellation_;
  ChannelSampler sampler_;
};

/// Convenience wrapper constructing a LinkSimulator for a single use.
ChannelUseOutcome run_channel_use(const SimulationConfig& cfg, double snr_db,
                                  std::uint64_t use_index);

/// SER sweep. Each SNR point runs batches of cfg.batch_size channel uses
/// until every detector has at least cfg.min_errors errors or
/// cfg.max_channel_uses is reached. SER is per scalar layer:
/// errors / (nt * channel_uses).
SerCurve estimate_ser(const SimulationConfig& cfg);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t n, double z = 1.96);

/// sqrt(p (1 - p) / n) for the point's per-layer trial count.
double standard_error(const SerPoint& p, unsigned nt);

} // namespace mimo
