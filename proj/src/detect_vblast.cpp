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

namespace mimo {

DetectionResult detect_vblast(std::span<const Complex> y, const ComplexMatrix& h,
                              NoiseSpec noise, const Constellation& c,
                              CancellationCriterion criterion) {
  if (y.size() != h.rows()) {
    throw DimensionError("detect_vblast: received vector length does not match channel rows");
  }
  if (noise.sigma2 < 0.0) {
    throw Error("detect_vblast: negative noise variance");
  }
  const std::size_t nt = h.cols();
  const bool mmse = criterion == CancellationCriterion::Mmse && noise.sigma2 > 0.0;

  std::vector<std::size_t> active(nt);
  for (std::size_t j = 0; j < nt; ++j) active[j] = j;
  ComplexVector residual(y.begin(), y.end());

  DetectionResult out;
  out.estimate.assign(nt, 0);
  DetectionTrace trace;
  trace.order.reserve(nt);
  trace.per_layer_soft.reserve(nt);

  while (!active.empty()) {
    const ComplexMatrix ha = h.select_columns(active);
    ComplexMatrix filter;
    // Post-detection noise enhancement per active layer; smallest goes first.
    std::vector<double> enhancement(active.size());
    if (mmse) {
      const ComplexMatrix error_cov = inverse(add_diagonal(gram(ha), noise.sigma2));
      for (std::size_t k = 0; k < active.size(); ++k) {
        enhancement[k] = error_cov(k, k).real();
      }
      filter = mat_mul(error_cov, hermitian(ha));
    } else {
      filter = pseudo_inverse(ha);
      for (std::size_t k = 0; k < active.size(); ++k) {
        enhancement[k] = squared_norm(filter.row(k));
      }
    }

    std::size_t pick = 0;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (enhancement[k] < lowest) {
        lowest = enhancement[k];
        pick = k;
      }
    }

    const auto g = filter.row(pick);
    Complex z = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      z += g[i] * residual[i];
    }
    const std::size_t layer = active[pick];
    const SymbolIndex decided = slice(z, c);
    out.estimate[layer] = decided;
    trace.order.push_back(static_cast<unsigned>(layer + 1));
    trace.per_layer_soft.push_back(z);

    const Complex s = c.point(decided);
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual[i] -= h(i, layer) * s;
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  out.trace = std::move(trace);
  return out;
}

} // namespace mimo
