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

// Dense complex linear algebra for the small (at most a few dozen rows)
// matrices that appear in MIMO detection. Storage is row-major.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mimo/errors.hpp"

namespace mimo {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  /// Builds a matrix from row-major data; throws on length mismatch or
  /// non-finite entries.
  static ComplexMatrix from_row_major(std::size_t rows, std::size_t cols,
                                      std::vector<Complex> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  ComplexVector column(std::size_t c) const;
  std::span<const Complex> data() const noexcept { return data_; }

  /// Copy of the listed columns, in the order given.
  ComplexMatrix select_columns(std::span<const std::size_t> cols) const;

  bool all_finite() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix hermitian(const ComplexMatrix& a);
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> x);
ComplexMatrix scaled(const ComplexMatrix& a, Complex alpha);
/// a + alpha * I; a must be square.
ComplexMatrix add_diagonal(const ComplexMatrix& a, double alpha);

/// Hermitian Gram matrix a^H a, computed without forming a^H.
ComplexMatrix gram(const ComplexMatrix& a);

/// LU factorization with partial pivoting of a square matrix.
///
/// A pivot whose magnitude is below 1e-12 times the largest entry of the
/// input matrix is treated as singular and raises SingularMatrixError.
class LuDecomposition {
public:
  static constexpr double kSingularThreshold = 1e-12;

  explicit LuDecomposition(ComplexMatrix a);

  std::size_t size() const noexcept { return lu_.rows(); }
  ComplexVector solve(std::span<const Complex> b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;

private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Solves a x = b. ||a x - b||_inf <= 1e-10 (1 + ||b||_inf) for well
/// conditioned a.
ComplexVector solve(const ComplexMatrix& a, std::span<const Complex> b);
/// Solves a X = b column by column with a single factorization.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/// Left pseudoinverse (H^H H)^{-1} H^H of a tall full-column-rank matrix.
/// Throws SingularMatrixError when H is rank deficient.
ComplexMatrix pseudo_inverse(const ComplexMatrix& h);

/// Lower-triangular L with L L^H = r for Hermitian positive definite r.
ComplexMatrix cholesky(const ComplexMatrix& r);

double max_abs(const ComplexMatrix& a) noexcept;
double max_abs(std::span<const Complex> v) noexcept;
double squared_norm(std::span<const Complex> v) noexcept;

} // namespace mimo
