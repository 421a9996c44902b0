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

// Decision procedures for products of odometers: orbit equivalence,
// conjugacy, the subset-product invariant and eigenvalue groups.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "odocoe/intmat.hpp"
#include "odocoe/supernatural.hpp"

namespace odocoe {

using SupernaturalList = std::vector<SupernaturalNumber>;

enum class CoeObstruction { None, LengthMismatch, TotalProductMismatch, ClassMultisetMismatch };

std::string to_string(CoeObstruction o);

struct CoeDecision {
  bool equivalent = false;
  /// sigma[i] = j pairs M_i with N_j.
  std::vector<std::size_t> sigma;
  /// multipliers[i] = (m_i, n) with m_i * M_i == n * N_{sigma(i)}.
  std::vector<std::pair<SupernaturalNumber, SupernaturalNumber>> multipliers;
  CoeObstruction obstruction = CoeObstruction::None;
  std::string detail;
};

/// Orbit equivalence of prod alpha_{M_i} and prod alpha_{N_j}: equal length,
/// equal total product, equal multisets of class keys. Certificates are
/// re-verified exactly before return.
CoeDecision coe_decide(std::span<const SupernaturalNumber> Ms,
                       std::span<const SupernaturalNumber> Ns);

struct ConjBlock {
  ClassKey key;
  std::vector<std::size_t> I;  // indices into Ms
  std::vector<std::size_t> J;  // indices into Ns
  SupernaturalNumber L;        // shared part, infinite exactly on key
  std::vector<mpz_class> m;    // M_i = m_i * L
  std::vector<mpz_class> n;    // N_j = n_j * L
  bool sizes_match = false;
  bool isomorphic = false;
  std::optional<Conjugator> conjugator;  // S diag(m) T = diag(n)
};

struct ConjDecision {
  bool conjugate = false;
  std::vector<ConjBlock> blocks;  // ordered by class key
  std::optional<std::size_t> failing_block;
  std::string reason;
};

ConjDecision conj_decide(std::span<const SupernaturalNumber> Ms,
                         std::span<const SupernaturalNumber> Ns);

/// Canonical L of a class: v_p(L) = inf on the key, the common exponent
/// where every member agrees, 0 otherwise.
SupernaturalNumber canonical_block_part(std::span<const SupernaturalNumber> members);

struct KEntry {
  std::uint32_t subset = 0;  // bit i set when factor i is included
  SupernaturalNumber product;
  ClassKey key;
};

struct KInvariant {
  std::size_t rank = 0;
  std::vector<KEntry> entries;  // indexed by subset mask
  SupernaturalNumber total;
};

KInvariant k_invariant(std::span<const SupernaturalNumber> Ms);
/// Equal rank, equal total product, equal multisets of subset class keys.
bool k_invariant_equal(const KInvariant& a, const KInvariant& b);

/// Reduced fraction num/den in [0, 1).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den);
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

/// T(A) = Z[A^{-1}]/Z inside Q/Z.
class TGroup {
 public:
  TGroup() = default;
  explicit TGroup(SupernaturalNumber A) : A_(std::move(A)) {}

  const SupernaturalNumber& index() const { return A_; }
  bool contains(const Rational& r) const;
  std::string to_string() const { return "T(" + A_.to_string() + ")"; }

  friend bool operator==(const TGroup&, const TGroup&) = default;

 private:
  SupernaturalNumber A_;
};

/// Eigenvalue group of the k-th power of alpha_M: T(M / gcd(|k|, M)), and
/// T(1) for k = 0.
TGroup eig_group(const SupernaturalNumber& M, std::int64_t k);

/// Eigenvalues of translation by k on Z/m, m the level modulus of M:
/// {t k / m mod 1}.
std::set<Rational> eig_group_oracle(const SupernaturalNumber& M, std::int64_t k, unsigned level);

inline constexpr std::int64_t kOracleModulusGuard = 10'000;

/// D with oracle(M, k, level) = T(D); D = m / gcd(k, m), m the level modulus.
/// The D increase with the level and their limit is the index of eig_group.
SupernaturalNumber eig_level_index(const SupernaturalNumber& M, std::int64_t k, unsigned level);

/// Elements of T(D) for a finite D.
std::set<Rational> finite_tgroup_elements(const SupernaturalNumber& D);

bool tgroup_subset(const TGroup& a, const TGroup& b);
TGroup tgroup_product(const TGroup& a, const TGroup& b);

enum class FactStatus { Cited, Certified, Assumed };
std::string to_string(FactStatus s);

struct Fact {
  std::string statement;
  FactStatus status = FactStatus::Certified;
  bool holds = false;
  std::string detail;
};

struct CounterexampleReport {
  Prime p = 0;
  Prime q = 0;
  std::uint64_t n = 0;
  TGroup e_gamma;             // eigenvalue group of the odometer generator
  Fact coe;                   // cited, never re-derived here
  Fact conjugate;             // certified negative
  std::vector<Fact> comparisons;
  std::vector<Fact> assumptions;

  bool certified() const;
};

/// Case analysis separating the orbit-equivalent pair built from
/// alpha_{n p^inf} and alpha_{n q^inf}: requires p != q primes, n > 1 and
/// gcd(p, n) = gcd(q, n) = 1.
CounterexampleReport free_group_counterexample_check(Prime p, Prime q, std::uint64_t n);

}  // namespace odocoe
