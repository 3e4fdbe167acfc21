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

#include "mimo/detect.hpp"

#include <limits>
#include <string>

namespace mimo {

namespace {

void require_shapes(std::span<const Complex> y, const ComplexMatrix& h, const char* who) {
  if (y.size() != h.rows()) {
    throw DimensionError(std::string(who) + ": received vector has length " +
                         std::to_string(y.size()) + " but channel has " +
                         std::to_string(h.rows()) + " rows");
  }
}

DetectionResult slice_all(std::span<const Complex> soft, const Constellation& c) {
  DetectionResult out;
  out.estimate.reserve(soft.size());
  for (const Complex& z : soft) {
    out.estimate.push_back(slice(z, c));
  }
  return out;
}

} // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
  case Algorithm::Zf: return "zf";
  case Algorithm::Mmse: return "mmse";
  case Algorithm::Ml: return "ml";
  case Algorithm::Sphere: return "sphere";
  case Algorithm::VblastZf: return "vblast-zf";
  case Algorithm::VblastMmse: return "vblast-mmse";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const Algorithm a : {Algorithm::Zf, Algorithm::Mmse, Algorithm::Ml, Algorithm::Sphere,
                            Algorithm::VblastZf, Algorithm::VblastMmse}) {
    if (algorithm_name(a) == name) return a;
  }
  throw ConfigError("detectors", "unknown detector '" + std::string(name) +
                                     "' (expected zf, mmse, ml, sphere, vblast-zf, vblast-mmse)");
}

double ml_metric(std::span<const Complex> y, const ComplexMatrix& h,
                 std::span<const SymbolIndex> x, const Constellation& c) {
  require_shapes(y, h, "ml_metric");
  if (x.size() != h.cols()) {
    throw DimensionError("ml_metric: candidate length does not match channel columns");
  }
  double metric = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      acc += h(i, j) * c.point(x[j]);
    }
    metric += std::norm(y[i] - acc);
  }
  return metric;
}

DetectionResult detect_zf(std::span<const Complex> y, const ComplexMatrix& h,
                          const Constellation& c) {
  require_shapes(y, h, "detect_zf");
  return slice_all(mat_vec(pseudo_inverse(h), y), c);
}

DetectionResult detect_mmse(std::span<const Complex> y, const ComplexMatrix& h,
                            NoiseSpec noise, const Constellation& c) {
  require_shapes(y, h, "detect_mmse");
  if (noise.sigma2 < 0.0) {
    throw Error("detect_mmse: negative noise variance");
  }
  if (noise.sigma2 == 0.0) {
    return detect_zf(y, h, c);
  }
  const ComplexMatrix filter = solve(add_diagonal(gram(h), noise.sigma2), hermitian(h));
  return slice_all(mat_vec(filter, y), c);
}

std::uint64_t ml_candidate_count(unsigned order, unsigned nt) noexcept {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < nt; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / order) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= order;
  }
  return n;
}

void check_ml_guard(unsigned order, unsigned nt, std::uint64_t guard) {
  const std::uint64_t n = ml_candidate_count(order, nt);
  if (n > guard) {
    throw GuardExceededError("ml: " + std::to_string(order) + "^" + std::to_string(nt) + " = " +
                             std::to_string(n) + " candidates exceeds the guard of " +
                             std::to_string(guard));
  }
}

DetectionResult detect(const DetectorSpec& spec, std::span<const Complex> y,
                       const ComplexMatrix& h, NoiseSpec noise, const Constellation& c) {
  switch (spec.algorithm) {
  case Algorithm::Zf: return detect_zf(y, h, c);
  case Algorithm::Mmse: return detect_mmse(y, h, noise, c);
  case Algorithm::Ml: return detect_ml(y, h, c, spec.ml_candidate_guard);
  case Algorithm::Sphere: return detect_sphere(y, h, c);
  case Algorithm::VblastZf: return detect_vblast(y, h, noise, c, CancellationCriterion::Zf);
  case Algorithm::VblastMmse: return detect_vblast(y, h, noise, c, CancellationCriterion::Mmse);
  }
  throw Error("detect: unknown algorithm");
}

} // namespace mimo
