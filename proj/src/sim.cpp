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

#include "mimo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace mimo {

void SimulationConfig::validate() const {
  channel_model().validate();
  try {
    (void)constellation();
  } catch (const UnsupportedOrderError& e) {
    throw ConfigError("mod", e.what());
  }
  if (detectors.empty()) throw ConfigError("detectors", "at least one detector is required");
  for (const DetectorSpec& d : detectors) {
    if (d.ml_candidate_guard < 1) throw ConfigError("detectors", "ML guard must be >= 1");
  }
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    const double s = snr_grid_db[i];
    if (std::isnan(s) || (std::isinf(s) && s < 0)) {
      throw ConfigError("snr-db", "SNR values must be finite or +inf");
    }
    if (i > 0 && !(s > snr_grid_db[i - 1])) {
      throw ConfigError("snr-db", "SNR grid must be strictly increasing");
    }
  }
  if (max_channel_uses < 1) throw ConfigError("trials", "must be at least 1");
  if (threads < 1) throw ConfigError("threads", "must be at least 1");
  if (batch_size < 1) throw ConfigError("batch-size", "must be at least 1");
  if (freeze_h == FrozenChannel::Identity && rho != 0.0) {
    throw ConfigError("freeze-h", "a frozen channel cannot be combined with rho > 0");
  }
}

const SerPoint& SerCurve::at(double snr_db, Algorithm detector) const {
  const auto it = std::find_if(points.begin(), points.end(), [&](const SerPoint& p) {
    return p.snr_db == snr_db && p.detector == detector;
  });
  if (it == points.end()) {
    throw Error("SerCurve: no point for " + std::string(algorithm_name(detector)) + " at " +
                std::to_string(snr_db) + " dB");
  }
  return *it;
}

void BatchTally::add(const ChannelUseOutcome& o) {
  if (errors.size() < o.errors.size()) errors.resize(o.errors.size(), 0);
  for (std::size_t d = 0; d < o.errors.size(); ++d) errors[d] += o.errors[d];
  ++channel_uses;
  resamples += o.resamples;
}

void BatchTally::merge(const BatchTally& other) {
  if (errors.size() < other.errors.size()) errors.resize(other.errors.size(), 0);
  for (std::size_t d = 0; d < other.errors.size(); ++d) errors[d] += other.errors[d];
  channel_uses += other.channel_uses;
  resamples += other.resamples;
}

SerCurve estimate_ser(const SimulationConfig& cfg) {
  const LinkSimulator sim(cfg);
  const std::size_t nd = cfg.detectors.size();

  SerCurve curve;
  curve.config = cfg;
  curve.points.reserve(cfg.snr_grid_db.size() * nd);

  for (const double snr : cfg.snr_grid_db) {
    BatchTally total;
    total.errors.assign(nd, 0);
    while (total.channel_uses < cfg.max_channel_uses) {
      const std::uint64_t count =
          std::min(cfg.batch_size, cfg.max_channel_uses - total.channel_uses);
      total.merge(sim.run_batch_parallel(snr, total.channel_uses, count, cfg.threads));
      if (cfg.min_errors > 0 &&
          std::all_of(total.errors.begin(), total.errors.end(),
                      [&](std::uint64_t e) { return e >= cfg.min_errors; })) {
        break;
      }
    }
    curve.resampled_draws += total.resamples;

    const std::uint64_t trials = static_cast<std::uint64_t>(cfg.nt) * total.channel_uses;
    for (std::size_t d = 0; d < nd; ++d) {
      SerPoint p;
      p.snr_db = snr;
      p.detector = cfg.detectors[d].algorithm;
      p.channel_uses = total.channel_uses;
      p.symbol_errors = total.errors[d];
      p.ser = static_cast<double>(p.symbol_errors) / static_cast<double>(trials);
      std::tie(p.ci95_lo, p.ci95_hi) = wilson_interval(p.symbol_errors, trials);
      curve.points.push_back(p);
    }
  }
  return curve;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t n, double z) {
  if (n == 0 || errors > n) {
    throw Error("wilson_interval: need 0 <= errors <= n and n >= 1");
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(errors) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = errors == n ? 1.0 : std::min(1.0, center + half);
  lo = std::min(lo, p);
  hi = std::max(hi, p);
  return {lo, hi};
}

double standard_error(const SerPoint& p, unsigned nt) {
  const double n = static_cast<double>(nt) * static_cast<double>(p.channel_uses);
  return std::sqrt(p.ser * (1.0 - p.ser) / n);
}

} // namespace mimo
