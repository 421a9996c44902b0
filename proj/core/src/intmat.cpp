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

#include "odocoe/intmat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "odocoe/error.hpp"

namespace odocoe {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw PreconditionError("matrix entry count " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::diagonal(std::span<const mpz_class> d) {
  IntMatrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix dimension mismatch in product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != 0) return false;
    }
  }
  return true;
}

std::vector<mpz_class> IntMatrix::diagonal_entries() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out.push_back((*this)(i, i));
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

mpz_class determinant(const IntMatrix& a) {
  if (!a.square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      m.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.square()) return false;
  mpz_class d = determinant(a);
  return d == 1 || d == -1;
}

namespace {

// Position of the nonzero entry of least absolute value in the trailing
// block starting at (t, t); rows scanned first, then columns.
bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < s.rows(); ++i) {
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      mpz_class v = abs(s(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition out{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& U = out.U;
  IntMatrix& S = out.S;
  IntMatrix& V = out.V;
  const std::size_t diag = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::size_t pi = 0;
      std::size_t pj = 0;
      if (!find_pivot(S, t, pi, pj)) break;
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        if (S(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        if (S(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Pivot isolated; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < S.rows() && divisible; ++i) {
        for (std::size_t j = t + 1; j < S.cols(); ++j) {
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

IntMatrix invert_unimodular(const IntMatrix& u) {
  if (!u.square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = u.rows();
  const mpz_class det = determinant(u);
  if (det != 1 && det != -1) {
    throw PreconditionError("matrix " + u.to_string() + " is not unimodular (det " + det.get_str() +
                            ")");
  }
  IntMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = det;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_{ji}: delete row j, column i
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = u(r, c);
        }
        ++mr;
      }
      mpz_class cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = cof * det;  // det is its own inverse
    }
  }
  if (!(u * inv == IntMatrix::identity(n))) throw VerificationError("unimodular inverse check failed");
  return inv;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<mpz_class> orders) : orders_(std::move(orders)) {
  for (const auto& d : orders_) {
    if (d < 1) throw PreconditionError("cyclic factor order must be >= 1");
  }
}

mpz_class FiniteAbelianGroup::order() const {
  mpz_class out = 1;
  for (const auto& d : orders_) out *= d;
  return out;
}

std::vector<mpz_class> FiniteAbelianGroup::invariant_factors() const {
  std::vector<mpz_class> out;
  if (orders_.empty()) return out;
  SmithDecomposition snf = smith_normal_form(IntMatrix::diagonal(orders_));
  for (const auto& d : snf.S.diagonal_entries()) {
    if (d != 1) out.push_back(d);
  }
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (orders_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + orders_[i].get_str();
  }
  return out;
}

bool fab_isomorphic(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  return a.invariant_factors() == b.invariant_factors();
}

Conjugator solve_conjugator(std::span<const mpz_class> m, std::span<const mpz_class> n) {
  if (m.size() != n.size()) throw PreconditionError("conjugator needs sequences of equal length");
  FiniteAbelianGroup gm({m.begin(), m.end()});
  FiniteAbelianGroup gn({n.begin(), n.end()});
  if (!fab_isomorphic(gm, gn)) {
    throw PreconditionError(gm.to_string() + " is not isomorphic to " + gn.to_string());
  }
  const IntMatrix dm = IntMatrix::diagonal(m);
  const IntMatrix dn = IntMatrix::diagonal(n);
  SmithDecomposition sm = smith_normal_form(dm);
  SmithDecomposition sn = smith_normal_form(dn);
  if (!(sm.S == sn.S)) throw VerificationError("isomorphic groups with different Smith forms");
  // U_m dm V_m = U_n dn V_n  =>  dn = (U_n^-1 U_m) dm (V_m V_n^-1)
  Conjugator out{invert_unimodular(sn.U) * sm.U, sm.V * invert_unimodular(sn.V)};
  if (!(out.S * dm * out.T == dn) || !is_unimodular(out.S) || !is_unimodular(out.T)) {
    throw VerificationError("conjugator failed exact re-verification");
  }
  return out;
}

}  // namespace odocoe
