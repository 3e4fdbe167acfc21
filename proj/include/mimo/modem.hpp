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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/numerics.hpp"

namespace mimo {

/// Index of a point within a constellation, in [0, M).
using SymbolIndex = std::uint32_t;

enum class ConstellationKind { SquareQam, QpskAlias };

/// Gray-labelled square QAM with unit average symbol energy.
///
/// Points lie on a side x side grid of odd integer coordinates scaled by
/// 1/sqrt(E). Point k sits at in-phase level k / side and quadrature level
/// k % side, so indices grow with the in-phase coordinate first. The bit label
/// of a point is the Gray code of its in-phase level followed by the Gray code
/// of its quadrature level.
class Constellation {
public:
  static Constellation square_qam(unsigned order);
  /// QPSK; the same point set and labels as 4-QAM.
  static Constellation qpsk();
  /// Accepts "4qam", "qpsk", "16qam", "64qam".
  static Constellation from_name(std::string_view name);

  unsigned order() const noexcept { return order_; }
  ConstellationKind kind() const noexcept { return kind_; }
  std::string name() const;
  unsigned bits_per_symbol() const noexcept { return bits_; }

  std::span<const Complex> points() const noexcept { return points_; }
  const Complex& point(SymbolIndex k) const { return points_.at(k); }
  /// Label of point k as an integer whose bits_per_symbol() low bits are the
  /// label, most significant bit first.
  std::uint32_t bit_label(SymbolIndex k) const { return labels_.at(k); }

  /// Square grid structure used by the sphere decoder.
  unsigned side() const noexcept { return side_; }
  double scale() const noexcept { return scale_; }
  /// Real coordinate of per-axis level a in [0, side).
  double axis_value(unsigned a) const noexcept {
    return scale_ * (2.0 * a + 1.0 - side_);
  }
  SymbolIndex index_of(unsigned in_phase_level, unsigned quadrature_level) const noexcept {
    return in_phase_level * side_ + quadrature_level;
  }

private:
  Constellation(unsigned order, ConstellationKind kind);

  unsigned order_ = 0;
  unsigned side_ = 0;
  unsigned bits_ = 0;
  double scale_ = 0.0;
  ConstellationKind kind_ = ConstellationKind::SquareQam;
  std::vector<Complex> points_;
  std::vector<std::uint32_t> labels_;
};

inline Constellation build_constellation(unsigned order) {
  return Constellation::square_qam(order);
}

ComplexVector modulate(std::span<const SymbolIndex> indices, const Constellation& c);

/// Nearest constellation point by linear scan; ties go to the smallest index.
SymbolIndex slice(Complex z, const Constellation& c) noexcept;

/// Concatenated bit labels, one byte (0 or 1) per bit.
std::vector<std::uint8_t> demodulate(std::span<const SymbolIndex> indices,
                                     const Constellation& c);

} // namespace mimo
