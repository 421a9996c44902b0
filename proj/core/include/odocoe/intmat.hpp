// Copyright 2026 The odocoe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace odocoe {

/// Dense integer matrix, row-major, arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const mpz_class> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<mpz_class>& entries() const { return data_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  bool is_diagonal() const;
  std::vector<mpz_class> diagonal_entries() const;
  std::string to_string() const;

  // Elementary operations used by the normal-form reduction.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& factor);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

/// U * A * V == S with U, V unimodular and S = diag(d_1, ..., d_t, 0...)
/// where d_1 | d_2 | ... and d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Inverse of a square matrix with determinant +-1.
IntMatrix invert_unimodular(const IntMatrix& u);

/// prod_i Z/d_i with d_i >= 1.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<mpz_class> orders);

  const std::vector<mpz_class>& orders() const { return orders_; }
  mpz_class order() const;
  /// Invariant factors d_1 | ... | d_t with every d_i > 1.
  std::vector<mpz_class> invariant_factors() const;
  std::string to_string() const;

 private:
  std::vector<mpz_class> orders_;
};

bool fab_isomorphic(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

/// S, T in GL_r(Z) with S * diag(m) * T == diag(n).
struct Conjugator {
  IntMatrix S;
  IntMatrix T;
};

Conjugator solve_conjugator(std::span<const mpz_class> m, std::span<const mpz_class> n);

}  // namespace odocoe
