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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace odocoe {

using Prime = std::uint64_t;

/// Exponent of a prime in a supernatural number: a non-negative
/// arbitrary-precision integer or infinity.
class Exponent {
 public:
  Exponent() = default;
  Exponent(long value);  // NOLINT(google-explicit-constructor)
  explicit Exponent(mpz_class value);

  static Exponent infinity();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }
  /// Finite value; throws PreconditionError when infinite.
  const mpz_class& value() const;

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b);
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }

  std::string to_string() const;

 private:
  bool infinite_ = false;
  mpz_class value_ = 0;
};

Exponent min(const Exponent& a, const Exponent& b);
Exponent max(const Exponent& a, const Exponent& b);

/// Set of primes carrying an infinite exponent. Two finitely supported
/// supernatural numbers are ~-equivalent iff their keys coincide.
using ClassKey = std::set<Prime>;

/// Finitely supported supernatural number prod_p p^{v_p}, v_p in N or inf.
/// Zero exponents are never stored; iteration is in increasing prime order,
/// so equality is representation equality.
class SupernaturalNumber {
 public:
  using Factors = std::map<Prime, Exponent>;

  /// The number 1.
  SupernaturalNumber() = default;

  static SupernaturalNumber from_natural(std::uint64_t n);
  static SupernaturalNumber from_natural(const mpz_class& n);
  static SupernaturalNumber prime_power(Prime p, Exponent e);

  const Factors& factors() const { return factors_; }
  Exponent exponent(Prime p) const;

  /// True iff some exponent is infinite.
  bool is_supernatural() const;
  bool is_finite() const { return !is_supernatural(); }
  bool is_one() const { return factors_.empty(); }

  /// Value of a finite number. Throws PreconditionError for supernatural
  /// values or when the value would exceed `max_bits`.
  mpz_class to_natural(std::size_t max_bits = 4096) const;
  /// Value as a machine integer; throws std::overflow_error if it does not fit.
  std::int64_t to_int64() const;

  /// Canonical text in the expression grammar, primes ascending.
  std::string to_string() const;

  friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;
  friend bool operator<(const SupernaturalNumber& a, const SupernaturalNumber& b);

 private:
  void set(Prime p, Exponent e);
  friend SupernaturalNumber mul(const SupernaturalNumber&, const SupernaturalNumber&);
  friend SupernaturalNumber gcd(const SupernaturalNumber&, const SupernaturalNumber&);
  friend SupernaturalNumber lcm(const SupernaturalNumber&, const SupernaturalNumber&);
  friend SupernaturalNumber div_exact(const SupernaturalNumber&, const SupernaturalNumber&);

  Factors factors_;
};

/// Parses `number := term ("*" term)* ; term := nat | nat "^" exp ;
/// exp := nat | "inf"`, whitespace ignored. Plain naturals are factorized;
/// bases carrying an exponent must be prime.
SupernaturalNumber parse_sn(std::string_view text);

SupernaturalNumber mul(const SupernaturalNumber& a, const SupernaturalNumber& b);
bool divides(const SupernaturalNumber& a, const SupernaturalNumber& b);
SupernaturalNumber gcd(const SupernaturalNumber& a, const SupernaturalNumber& b);
SupernaturalNumber lcm(const SupernaturalNumber& a, const SupernaturalNumber& b);
/// a / b for b | a with b finite; infinite exponents of a survive.
SupernaturalNumber div_exact(const SupernaturalNumber& a, const SupernaturalNumber& b);

/// a <~ b: exists n in N with a | n*b. Requires both supernatural.
bool lesssim(const SupernaturalNumber& a, const SupernaturalNumber& b);
bool sim(const SupernaturalNumber& a, const SupernaturalNumber& b);

/// Multipliers (m, n) with m*a == n*b, m carrying b's finite excess and n
/// carrying a's. Throws PreconditionError unless sim(a, b).
std::pair<SupernaturalNumber, SupernaturalNumber> sim_witness(const SupernaturalNumber& a,
                                                               const SupernaturalNumber& b);

ClassKey class_key(const SupernaturalNumber& a);
std::string to_string(const ClassKey& key);

bool is_prime(std::uint64_t n);

}  // namespace odocoe
