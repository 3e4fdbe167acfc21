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
#include <random>
#include <span>

#include "mimo/numerics.hpp"

namespace mimo {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// Two streams with the same key produce identical sequences; streams with
/// different keys are seeded through a 64-bit mixing function so that
/// neighbouring ids are decorrelated. Parallel consumers take one stream each.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Independent child stream; used to redraw a rejected sample.
  RngStream substream(std::uint64_t k) const;

  /// CN(0,1): independent real and imaginary parts, each N(0, 1/2).
  Complex complex_gaussian();
  /// Uniform integer in [0, n).
  std::uint32_t uniform_index(std::uint32_t n);

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

inline Complex sample_complex_gaussian(RngStream& rng) { return rng.complex_gaussian(); }

enum class CorrelationKind { Iid, Kronecker };

struct ChannelModel {
  unsigned nt = 1;
  unsigned nr = 1;
  CorrelationKind correlation = CorrelationKind::Iid;
  double rho_tx = 0.0;
  double rho_rx = 0.0;

  static ChannelModel iid(unsigned nt, unsigned nr);
  /// rho = 0 yields an i.i.d. model; otherwise exponential correlation with
  /// the same coefficient at both ends.
  static ChannelModel with_rho(unsigned nt, unsigned nr, double rho);
  static ChannelModel kronecker(unsigned nt, unsigned nr, double rho_tx, double rho_rx);

  /// Throws ConfigError on nr < nt, zero dimensions or rho outside [0, 1).
  void validate() const;
};

struct NoiseSpec {
  /// Total complex noise variance per receive antenna.
  double sigma2 = 0.0;
};

/// Exponential correlation matrix, entry (i, j) = rho^|i-j|.
ComplexMatrix correlation_matrix(unsigned n, double rho);

ComplexMatrix sample_iid_channel(const ChannelModel& model, RngStream& rng);
/// H = L_rx * H_w * L_tx^H with L the Cholesky factors of the exponential
/// correlation matrices at each end.
ComplexMatrix sample_correlated_channel(const ChannelModel& model, RngStream& rng);

/// Draws channel matrices for a fixed model, caching the correlation factors.
class ChannelSampler {
public:
  explicit ChannelSampler(const ChannelModel& model);

  const ChannelModel& model() const noexcept { return model_; }
  ComplexMatrix operator()(RngStream& rng) const;

private:
  ChannelModel model_;
  ComplexMatrix l_rx_;
  ComplexMatrix l_tx_h_;
};

/// sigma2 = nt / 10^(snr_db / 10): average received SNR per receive antenna
/// for unit-energy symbols and CN(0,1) gains. snr_db = +inf gives sigma2 = 0.
NoiseSpec noise_variance_for_snr(double snr_db, unsigned nt);

ComplexVector add_awgn(std::span<const Complex> s, NoiseSpec noise, RngStream& rng);

} // namespace mimo
