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

// MIMO symbol detectors for y = H x + w with perfect channel knowledge.
//
// All detectors are pure functions and return hard decisions as constellation
// indices, one per transmit antenna.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/channel.hpp"
#include "mimo/modem.hpp"
#include "mimo/numerics.hpp"

namespace mimo {

enum class Algorithm { Zf, Mmse, Ml, Sphere, VblastZf, VblastMmse };

struct DetectorSpec {
  static constexpr std::uint64_t kDefaultMlGuard = 1'000'000;

  Algorithm algorithm = Algorithm::Zf;
  /// Largest number of candidate vectors the exhaustive ML search may visit.
  std::uint64_t ml_candidate_guard = kDefaultMlGuard;
};

/// CLI spelling: zf, mmse, ml, sphere, vblast-zf, vblast-mmse.
std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

/// Audit record of a successive-cancellation run.
struct DetectionTrace {
  /// Detection sequence of transmit antennas, 1-indexed.
  std::vector<unsigned> order;
  /// Filter output for each layer before slicing, in detection order.
  ComplexVector per_layer_soft;
};

struct SearchStats {
  /// Tree nodes (one per real dimension) whose partial metric fit the radius.
  std::uint64_t nodes_visited = 0;
  /// Complete candidate vectors reached.
  std::uint64_t leaves_visited = 0;
};

struct DetectionResult {
  std::vector<SymbolIndex> estimate;
  std::optional<DetectionTrace> trace;
  std::optional<SearchStats> search;
};

enum class CancellationCriterion { Zf, Mmse };

/// ||y - H x||^2 for the candidate index vector x.
double ml_metric(std::span<const Complex> y, const ComplexMatrix& h,
                 std::span<const SymbolIndex> x, const Constellation& c);

DetectionResult detect_zf(std::span<const Complex> y, const ComplexMatrix& h,
                          const Constellation& c);

/// Linear MMSE filter (H^H H + sigma2 I)^{-1} H^H, valid for unit-energy
/// symbols. At sigma2 = 0 this is the zero-forcing filter.
DetectionResult detect_mmse(std::span<const Complex> y, const ComplexMatrix& h,
                            NoiseSpec noise, const Constellation& c);

/// Exhaustive search over all M^nt candidates in odometer order (last antenna
/// fastest). Ties keep the first candidate found, i.e. the lexicographically
/// smallest index vector. Throws GuardExceededError when M^nt > guard.
DetectionResult detect_ml(std::span<const Complex> y, const ComplexMatrix& h,
                          const Constellation& c,
                          std::uint64_t guard = DetectorSpec::kDefaultMlGuard);

/// Exact ML by depth-first Schnorr-Euchner enumeration on the real-valued
/// model, with the radius shrinking at every leaf. Returns the same
/// estimate as detect_ml, including its tie-break, and fills `search`.
DetectionResult detect_sphere(std::span<const Complex> y, const ComplexMatrix& h,
                              const Constellation& c);

/// Ordered successive interference cancellation (V-BLAST). Each stage nulls
/// the remaining layers, detects the layer with the smallest post-detection
/// noise enhancement, and subtracts its contribution. Fills `trace`.
DetectionResult detect_vblast(std::span<const Complex> y, const ComplexMatrix& h,
                              NoiseSpec noise, const Constellation& c,
                              CancellationCriterion criterion);

DetectionResult detect(const DetectorSpec& spec, std::span<const Complex> y,
                       const ComplexMatrix& h, NoiseSpec noise, const Constellation& c);

/// M^nt, saturating at UINT64_MAX.
std::uint64_t ml_candidate_count(unsigned order, unsigned nt) noexcept;

/// Throws GuardExceededError if exhaustive ML is infeasible for this size.
void check_ml_guard(unsigned order, unsigned nt, std::uint64_t guard);

} // namespace mimo
