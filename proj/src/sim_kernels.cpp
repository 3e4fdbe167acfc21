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

#include <exception>
#include <string>

#include <omp.h>

namespace mimo {

namespace {

ComplexMatrix identity_channel(unsigned nr, unsigned nt) {
  ComplexMatrix h(nr, nt);
  for (unsigned j = 0; j < nt; ++j) h(j, j) = 1.0;
  return h;
}

} // namespace

LinkSimulator::LinkSimulator(SimulationConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))),
      constellation_(cfg_.constellation()),
      sampler_(cfg_.channel_model()) {
  for (const DetectorSpec& d : cfg_.detectors) {
    if (d.algorithm == Algorithm::Ml) {
      check_ml_guard(constellation_.order(), cfg_.nt, d.ml_candidate_guard);
    }
  }
}

ChannelUseOutcome LinkSimulator::run_channel_use(double snr_db, std::uint64_t use_index) const {
  const unsigned nt = cfg_.nt;
  const NoiseSpec noise = noise_variance_for_snr(snr_db, nt);
  const RngStream root(cfg_.seed, use_index);

  ChannelUseOutcome out;
  out.errors.assign(cfg_.detectors.size(), 0);
  std::vector<SymbolIndex> sent(nt);

  for (unsigned attempt = 0;; ++attempt) {
    if (attempt > kMaxRedraws) {
      throw Error("channel use " + std::to_string(use_index) + ": no full-rank channel after " +
                  std::to_string(kMaxRedraws) + " redraws");
    }
    RngStream rng = attempt == 0 ? root : root.substream(attempt);
    for (SymbolIndex& s : sent) {
      s = rng.uniform_index(constellation_.order());
    }
    const ComplexMatrix h =
        cfg_.freeze_h == FrozenChannel::Identity ? identity_channel(cfg_.nr, nt) : sampler_(rng);
    const ComplexVector y = add_awgn(mat_vec(h, modulate(sent, constellation_)), noise, rng);

    try {
      // Rank test independent of which detectors are configured.
      LuDecomposition check(gram(h));
      for (std::size_t d = 0; d < cfg_.detectors.size(); ++d) {
        const DetectionResult r = detect(cfg_.detectors[d], y, h, noise, constellation_);
        std::uint32_t wrong = 0;
        for (unsigned j = 0; j < nt; ++j) {
          wrong += r.estimate[j] != sent[j] ? 1u : 0u;
        }
        out.errors[d] = wrong;
      }
      return out;
    } catch (const SingularMatrixError&) {
      ++out.resamples;
    }
  }
}

BatchTally LinkSimulator::run_batch_serial(double snr_db, std::uint64_t first,
                                           std::uint64_t count) const {
  BatchTally tally;
  tally.errors.assign(cfg_.detectors.size(), 0);
  for (std::uint64_t u = first; u < first + count; ++u) {
    tally.add(run_channel_use(snr_db, u));
  }
  return tally;
}

BatchTally LinkSimulator::run_batch_parallel(double snr_db, std::uint64_t first,
                                             std::uint64_t count, unsigned threads) const {
  std::vector<ChannelUseOutcome> outcomes(count);
  std::vector<std::exception_ptr> failures(count);
  const auto n = static_cast<std::int64_t>(count);

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      outcomes[i] = run_channel_use(snr_db, first + static_cast<std::uint64_t>(i));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }

  BatchTally tally;
  tally.errors.assign(cfg_.detectors.size(), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    tally.add(outcomes[i]);
  }
  return tally;
}

ChannelUseOutcome run_channel_use(const SimulationConfig& cfg, double snr_db,
                                  std::uint64_t use_index) {
  return LinkSimulator(cfg).run_channel_use(snr_db, use_index);
}

} // namespace mimo
