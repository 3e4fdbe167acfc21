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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace mimo {

DetectionResult detect_ml(std::span<const Complex> y, const ComplexMatrix& h,
                          const Constellation& c, std::uint64_t guard) {
  if (y.size() != h.rows()) {
    throw DimensionError("detect_ml: received vector length does not match channel rows");
  }
  const std::size_t nt = h.cols();
  const std::size_t nr = h.rows();
  const unsigned m = c.order();
  check_ml_guard(m, static_cast<unsigned>(nt), guard);

  // prefix[j] holds H[:, 0..j] x[0..j]; only the levels at or after the
  // changed digit are recomputed when the odometer advances.
  std::vector<ComplexVector> prefix(nt + 1, ComplexVector(nr));
  std::vector<SymbolIndex> x(nt, 0);
  std::vector<SymbolIndex> best_x(nt, 0);
  double best = std::numeric_limits<double>::infinity();

  std::size_t dirty = 0;
  while (true) {
    for (std::size_t j = dirty; j < nt; ++j) {
      const Complex s = c.point(x[j]);
      for (std::size_t i = 0; i < nr; ++i) {
        prefix[j + 1][i] = prefix[j][i] + h(i, j) * s;
      }
    }
    double metric = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
      metric += std::norm(y[i] - prefix[nt][i]);
    }
    if (metric < best) {
      best = metric;
      best_x = x;
    }

    std::size_t j = nt;
    while (j > 0 && x[j - 1] + 1 == m) {
      x[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
    ++x[j - 1];
    dirty = j - 1;
  }

  DetectionResult out;
  out.estimate = std::move(best_x);
  return out;
}

namespace {

constexpr unsigned kMaxSide = 8;

// Candidate per-axis levels for one tree depth, nearest to the centre first.
struct Level {
  std::array<unsigned, kMaxSide> order{};
  unsigned pos = 0;
  double center = 0.0;
  double base = 0.0;
};

void enumerate_order(Level& lv, const Constellation& c) {
  const unsigned side = c.side();
  for (unsigned a = 0; a < side; ++a) lv.order[a] = a;
  std::stable_sort(lv.order.begin(), lv.order.begin() + side, [&](unsigned a, unsigned b) {
    return std::abs(c.axis_value(a) - lv.center) < std::abs(c.axis_value(b) - lv.center);
  });
  lv.pos = 0;
}

} // namespace

DetectionResult detect_sphere(std::span<const Complex> y, const ComplexMatrix& h,
                              const Constellation& c) {
  if (y.size() != h.rows()) {
    throw DimensionError("detect_sphere: received vector length does not match channel rows");
  }
  if (h.rows() < h.cols()) {
    throw DimensionError("detect_sphere: need nr >= nt");
  }
  const std::size_t nt = h.cols();
  const std::size_t nr = h.rows();
  const std::size_t n = 2 * nt;

  // Real-valued model with interleaved coordinates: s[2j] = Re x_j,
  // s[2j+1] = Im x_j, and likewise for y.
  ComplexMatrix hr(2 * nr, n);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const double a = h(i, j).real();
      const double b = h(i, j).imag();
      hr(2 * i, 2 * j) = a;
      hr(2 * i, 2 * j + 1) = -b;
      hr(2 * i + 1, 2 * j) = b;
      hr(2 * i + 1, 2 * j + 1) = a;
    }
  }
  ComplexVector yr(2 * nr);
  for (std::size_t i = 0; i < nr; ++i) {
    yr[2 * i] = y[i].real();
    yr[2 * i + 1] = y[i].imag();
  }

  // ||y - H s||^2 = (s - s_zf)^T G (s - s_zf) + const with G = U^T U.
  const ComplexMatrix g = gram(hr);
  ComplexMatrix lower;
  ComplexVector s_zf;
  try {
    lower = cholesky(g);
    s_zf = solve(g, mat_vec(hermitian(hr), yr));
  } catch (const NotPositiveDefiniteError&) {
    throw SingularMatrixError("detect_sphere: channel matrix is rank deficient");
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("detect_sphere: channel matrix is rank deficient");
  }
  std::vector<double> u(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      u[i * n + j] = lower(j, i).real();
    }
  }
  std::vector<double> zf(n);
  for (std::size_t i = 0; i < n; ++i) zf[i] = s_zf[i].real();

  std::vector<Level> levels(n);
  std::vector<double> value(n, 0.0);
  std::vector<unsigned> chosen(n, 0);
  std::vector<SymbolIndex> candidate(nt, 0);
  std::vector<SymbolIndex> best_x;
  double best = std::numeric_limits<double>::infinity();
  SearchStats stats;

  auto set_center = [&](std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = d + 1; j < n; ++j) {
      acc += u[d * n + j] * (value[j] - zf[j]);
    }
    levels[d].center = zf[d] - acc / u[d * n + d];
    enumerate_order(levels[d], c);
  };

  std::size_t d = n - 1;
  levels[d].base = 0.0;
  set_center(d);
  while (true) {
    Level& lv = levels[d];
    if (lv.pos == c.side()) {
      if (d == n - 1) break;
      ++d;
      continue;
    }
    const unsigned a = lv.order[lv.pos++];
    const double v = c.axis_value(a);
    const double diag = u[d * n + d];
    const double partial = lv.base + diag * diag * (v - lv.center) * (v - lv.center);
    if (partial > best) {
      // Candidates are sorted by distance, so the rest of this level is out too.
      lv.pos = c.side();
      continue;
    }
    ++stats.nodes_visited;
    chosen[d] = a;
    value[d] = v;
    if (d > 0) {
      --d;
      levels[d].base = partial;
      set_center(d);
      continue;
    }
    ++stats.leaves_visited;
    for (std::size_t j = 0; j < nt; ++j) {
      candidate[j] = c.index_of(chosen[2 * j], chosen[2 * j + 1]);
    }
    if (partial < best || (partial == best && candidate < best_x)) {
      best = partial;
      best_x = candidate;
    }
  }

  DetectionResult out;
  out.estimate = std::move(best_x);
  out.search = stats;
  return out;
}

} // namespace mimo
