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

#include "mimo/channel.hpp"

#include <cmath>
#include <string>

namespace mimo {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix64(mix64(seed) ^ stream_id)) {}

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream(mix64(seed_ + 0x632be59bd9b4e019ULL * (k + 1)), stream_id_);
}

Complex RngStream::complex_gaussian() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

std::uint32_t RngStream::uniform_index(std::uint32_t n) {
  return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(engine_);
}

ChannelModel ChannelModel::iid(unsigned nt, unsigned nr) {
  return ChannelModel{nt, nr, CorrelationKind::Iid, 0.0, 0.0};
}

ChannelModel ChannelModel::with_rho(unsigned nt, unsigned nr, double rho) {
  return rho == 0.0 ? iid(nt, nr) : kronecker(nt, nr, rho, rho);
}

ChannelModel ChannelModel::kronecker(unsigned nt, unsigned nr, double rho_tx, double rho_rx) {
  return ChannelModel{nt, nr, CorrelationKind::Kronecker, rho_tx, rho_rx};
}

void ChannelModel::validate() const {
  if (nt == 0) throw ConfigError("nt", "must be at least 1");
  if (nr == 0) throw ConfigError("nr", "must be at least 1");
  if (nr < nt) {
    throw ConfigError("nr", "receive antennas (" + std::to_string(nr) +
                                ") must be >= transmit antennas (" + std::to_string(nt) + ")");
  }
  for (const double rho : {rho_tx, rho_rx}) {
    if (!(rho >= 0.0 && rho < 1.0)) {
      throw ConfigError("rho", "must lie in [0, 1), got " + std::to_string(rho));
    }
  }
}

ComplexMatrix correlation_matrix(unsigned n, double rho) {
  if (n == 0) throw DimensionError("correlation_matrix: n must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ConfigError("rho", "must lie in [0, 1), got " + std::to_string(rho));
  }
  ComplexMatrix r(n, n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      r(i, j) = std::pow(rho, i > j ? i - j : j - i);
    }
  }
  return r;
}

ComplexMatrix sample_iid_channel(const ChannelModel& model, RngStream& rng) {
  if (model.correlation != CorrelationKind::Iid) {
    throw Error("sample_iid_channel: model is correlated");
  }
  ComplexMatrix h(model.nr, model.nt);
  for (unsigned i = 0; i < model.nr; ++i) {
    for (unsigned j = 0; j < model.nt; ++j) {
      h(i, j) = rng.complex_gaussian();
    }
  }
  return h;
}

ComplexMatrix sample_correlated_channel(const ChannelModel& model, RngStream& rng) {
  if (model.correlation != CorrelationKind::Kronecker) {
    throw Error("sample_correlated_channel: model is i.i.d.");
  }
  return ChannelSampler(model)(rng);
}

ChannelSampler::ChannelSampler(const ChannelModel& model) : model_(model) {
  if (model_.correlation == CorrelationKind::Kronecker) {
    l_rx_ = cholesky(correlation_matrix(model_.nr, model_.rho_rx));
    l_tx_h_ = hermitian(cholesky(correlation_matrix(model_.nt, model_.rho_tx)));
  }
}

ComplexMatrix ChannelSampler::operator()(RngStream& rng) const {
  ChannelModel white = model_;
  white.correlation = CorrelationKind::Iid;
  ComplexMatrix h = sample_iid_channel(white, rng);
  if (model_.correlation == CorrelationKind::Iid) {
    return h;
  }
  return mat_mul(mat_mul(l_rx_, h), l_tx_h_);
}

NoiseSpec noise_variance_for_snr(double snr_db, unsigned nt) {
  if (nt == 0) throw DimensionError("noise_variance_for_snr: nt must be >= 1");
  if (std::isinf(snr_db) && snr_db > 0) return NoiseSpec{0.0};
  return NoiseSpec{nt / std::pow(10.0, snr_db / 10.0)};
}

ComplexVector add_awgn(std::span<const Complex> s, NoiseSpec noise, RngStream& rng) {
  // Draws are consumed even at sigma2 = 0 so that stream positions do not
  // depend on the noise level.
  ComplexVector y(s.begin(), s.end());
  const double amp = std::sqrt(noise.sigma2);
  for (Complex& v : y) {
    v += amp * rng.complex_gaussian();
  }
  return y;
}

} // namespace mimo
