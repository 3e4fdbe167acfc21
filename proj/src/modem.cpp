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

#include "mimo/modem.hpp"

#include <cmath>
#include <limits>

namespace mimo {

namespace {

unsigned gray(unsigned v) { return v ^ (v >> 1); }

} // namespace

Constellation::Constellation(unsigned order, ConstellationKind kind)
    : order_(order), kind_(kind) {
  if (order != 4 && order != 16 && order != 64) {
    throw UnsupportedOrderError("unsupported constellation order " + std::to_string(order) +
                                " (expected 4, 16 or 64)");
  }
  side_ = order == 4 ? 2 : order == 16 ? 4 : 8;
  bits_ = order == 4 ? 2 : order == 16 ? 4 : 6;
  const unsigned axis_bits = bits_ / 2;

  // Mean energy of the unscaled odd-integer grid: 2 (side^2 - 1) / 3.
  const double energy = 2.0 * (side_ * side_ - 1.0) / 3.0;
  scale_ = 1.0 / std::sqrt(energy);

  points_.reserve(order);
  labels_.reserve(order);
  for (unsigned i = 0; i < side_; ++i) {
    for (unsigned q = 0; q < side_; ++q) {
      points_.emplace_back(axis_value(i), axis_value(q));
      labels_.push_back((gray(i) << axis_bits) | gray(q));
    }
  }
}

Constellation Constellation::square_qam(unsigned order) {
  return Constellation(order, ConstellationKind::SquareQam);
}

Constellation Constellation::qpsk() { return Constellation(4, ConstellationKind::QpskAlias); }

Constellation Constellation::from_name(std::string_view name) {
  if (name == "4qam") return square_qam(4);
  if (name == "qpsk") return qpsk();
  if (name == "16qam") return square_qam(16);
  if (name == "64qam") return square_qam(64);
  throw UnsupportedOrderError("unknown modulation '" + std::string(name) +
                              "' (expected 4qam, qpsk, 16qam or 64qam)");
}

std::string Constellation::name() const {
  if (kind_ == ConstellationKind::QpskAlias) return "qpsk";
  return std::to_string(order_) + "qam";
}

ComplexVector modulate(std::span<const SymbolIndex> indices, const Constellation& c) {
  ComplexVector out;
  out.reserve(indices.size());
  for (const SymbolIndex k : indices) {
    if (k >= c.order()) {
      throw IndexOutOfRangeError("modulate: symbol index " + std::to_string(k) +
                                 " out of range for " + c.name());
    }
    out.push_back(c.points()[k]);
  }
  return out;
}

SymbolIndex slice(Complex z, const Constellation& c) noexcept {
  const auto pts = c.points();
  SymbolIndex best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (SymbolIndex k = 0; k < pts.size(); ++k) {
    const double d = std::norm(z - pts[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::vector<std::uint8_t> demodulate(std::span<const SymbolIndex> indices,
                                     const Constellation& c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(indices.size() * c.bits_per_symbol());
  for (const SymbolIndex k : indices) {
    if (k >= c.order()) {
      throw IndexOutOfRangeError("demodulate: symbol index " + std::to_string(k) +
                                 " out of range for " + c.name());
    }
    const std::uint32_t label = c.bit_label(k);
    for (unsigned b = c.bits_per_symbol(); b-- > 0;) {
      bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
  }
  return bits;
}

} // namespace mimo
