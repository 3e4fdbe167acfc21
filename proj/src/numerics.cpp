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

#include "mimo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mimo {

namespace {

std::string dims(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols() || a.empty()) {
    throw DimensionError(std::string(op) + ": expected a square matrix, got " + dims(a));
  }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ComplexMatrix: ragged initializer list");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) {
    throw NonFiniteError("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                            std::vector<Complex> data) {
  if (data.size() != rows * cols) {
    throw DimensionError("from_row_major: data length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  ComplexMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  if (!m.all_finite()) {
    throw NonFiniteError("from_row_major: non-finite entry");
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v[r] = (*this)(r, c);
  }
  return v;
}

ComplexMatrix ComplexMatrix::select_columns(std::span<const std::size_t> cols) const {
  ComplexMatrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      m(r, k) = (*this)(r, cols[k]);
    }
  }
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), is_finite);
}

ComplexMatrix hermitian(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + dims(a) + " * " + dims(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("mat_vec: " + dims(a) + " * vector of length " +
                         std::to_string(x.size()));
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc = 0.0;
    const auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) {
      acc += r[j] * x[j];
    }
    out[i] = acc;
  }
  return out;
}

ComplexMatrix scaled(const ComplexMatrix& a, Complex alpha) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = alpha * a(i, j);
    }
  }
  return out;
}

ComplexMatrix add_diagonal(const ComplexMatrix& a, double alpha) {
  require_square(a, "add_diagonal");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out(i, i) += alpha;
  }
  return out;
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        acc += std::conj(a(r, i)) * a(r, j);
      }
      g(i, j) = acc;
      g(j, i) = std::conj(acc);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

LuDecomposition::LuDecomposition(ComplexMatrix a) : lu_(std::move(a)) {
  require_square(lu_, "lu");
  if (!lu_.all_finite()) {
    throw NonFiniteError("lu: non-finite entry");
  }
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    perm_[i] = i;
  }

  const double tol = kSingularThreshold * max_abs(lu_);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > tol) || best == 0.0) {
      throw SingularMatrixError("lu: pivot " + std::to_string(k) + " below singularity threshold");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu_(k, j), lu_(p, j));
      }
      std::swap(perm_[k], perm_[p]);
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) {
        lu_(i, j) -= f * lu_(k, j);
      }
    }
  }
}

ComplexVector LuDecomposition::solve(std::span<const Complex> b) const {
  const std::size_t n = size();
  if (b.size() != n) {
    throw DimensionError("solve: matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                         ", right-hand side has length " + std::to_string(b.size()));
  }
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) {
      acc -= lu_(i, j) * x[j];
    }
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      acc -= lu_(i, j) * x[j];
    }
    x[i] = acc / lu_(i, i);
  }
  return x;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
  if (b.rows() != size()) {
    throw DimensionError("solve: matrix is " + std::to_string(size()) + "x" +
                         std::to_string(size()) + ", right-hand side is " + dims(b));
  }
  ComplexMatrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const ComplexVector col = solve(b.column(c));
    for (std::size_t r = 0; r < b.rows(); ++r) {
      x(r, c) = col[r];
    }
  }
  return x;
}

ComplexVector solve(const ComplexMatrix& a, std::span<const Complex> b) {
  return LuDecomposition(a).solve(b);
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  return LuDecomposition(a).solve(b);
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& h) {
  if (h.empty() || h.rows() < h.cols()) {
    throw DimensionError("pseudo_inverse: need rows >= cols, got " + dims(h));
  }
  try {
    return solve(gram(h), hermitian(h));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("pseudo_inverse: channel matrix " + dims(h) +
                              " is rank deficient");
  }
}

ComplexMatrix cholesky(const ComplexMatrix& r) {
  require_square(r, "cholesky");
  const std::size_t n = r.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = r(j, j).real();
    for (std::size_t k = 0; k < j; ++k) {
      d -= std::norm(l(j, k));
    }
    if (!(d > 0.0)) {
      throw NotPositiveDefiniteError("cholesky: pivot " + std::to_string(j) +
                                     " is not positive");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex acc = r(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        acc -= l(i, k) * std::conj(l(j, k));
      }
      l(i, j) = acc / ljj;
    }
  }
  return l;
}

double max_abs(const ComplexMatrix& a) noexcept { return max_abs(a.data()); }

double max_abs(std::span<const Complex> v) noexcept {
  double m = 0.0;
  for (const Complex& z : v) {
    m = std::max(m, std::abs(z));
  }
  return m;
}

double squared_norm(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const Complex& z : v) {
    s += std::norm(z);
  }
  return s;
}

} // namespace mimo
