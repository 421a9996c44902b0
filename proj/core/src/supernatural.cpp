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

#include "odocoe/supernatural.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "odocoe/error.hpp"

namespace odocoe {

Exponent::Exponent(long value) : value_(value) {
  if (value < 0) throw PreconditionError("negative exponent");
}

Exponent::Exponent(mpz_class value) : value_(std::move(value)) {
  if (value_ < 0) throw PreconditionError("negative exponent");
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  return e;
}

const mpz_class& Exponent::value() const {
  if (infinite_) throw PreconditionError("infinite exponent has no finite value");
  return value_;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.infinite_ || b.infinite_) return Exponent::infinity();
  return Exponent(mpz_class(a.value_ + b.value_));
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const Exponent& a, const Exponent& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string Exponent::to_string() const { return infinite_ ? "inf" : value_.get_str(); }

Exponent min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void SupernaturalNumber::set(Prime p, Exponent e) {
  if (e.is_zero()) {
    factors_.erase(p);
  } else {
    factors_[p] = std::move(e);
  }
}

SupernaturalNumber SupernaturalNumber::from_natural(std::uint64_t n) {
  if (n == 0) throw PreconditionError("0 is not a supernatural number");
  SupernaturalNumber out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.set(p, Exponent(e));
  }
  if (n > 1) out.set(n, Exponent(1L));
  return out;
}

SupernaturalNumber SupernaturalNumber::from_natural(const mpz_class& n) {
  if (n <= 0) throw PreconditionError("0 is not a supernatural number");
  if (!n.fits_ulong_p()) throw PreconditionError("natural too large to factorize: " + n.get_str());
  return from_natural(static_cast<std::uint64_t>(n.get_ui()));
}

SupernaturalNumber SupernaturalNumber::prime_power(Prime p, Exponent e) {
  if (!is_prime(p)) throw PreconditionError("base " + std::to_string(p) + " is not prime");
  SupernaturalNumber out;
  out.set(p, std::move(e));
  return out;
}

Exponent SupernaturalNumber::exponent(Prime p) const {
  auto it = factors_.find(p);
  return it == factors_.end() ? Exponent() : it->second;
}

bool SupernaturalNumber::is_supernatural() const {
  for (const auto& [p, e] : factors_) {
    if (e.is_infinite()) return true;
  }
  return false;
}

mpz_class SupernaturalNumber::to_natural(std::size_t max_bits) const {
  if (is_supernatural()) throw PreconditionError(to_string() + " is not a finite number");
  mpz_class out = 1;
  for (const auto& [p, e] : factors_) {
    const mpz_class& v = e.value();
    if (!v.fits_ulong_p()) throw PreconditionError("exponent too large to evaluate");
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), p, v.get_ui());
    out *= power;
    if (mpz_sizeinbase(out.get_mpz_t(), 2) > max_bits) {
      throw PreconditionError("value of " + to_string() + " exceeds evaluation budget");
    }
  }
  return out;
}

std::int64_t SupernaturalNumber::to_int64() const {
  mpz_class v = to_natural(64);
  if (!v.fits_slong_p()) throw std::overflow_error(to_string() + " does not fit in 64 bits");
  return v.get_si();
}

std::string SupernaturalNumber::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (!(e == Exponent(1L))) os << '^' << e.to_string();
  }
  return os.str();
}

bool operator<(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  // Lexicographic on the canonical (prime, exponent) sequence; only used for
  // deterministic ordering in containers.
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  for (; ia != a.factors_.end() && ib != b.factors_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (!(ia->second == ib->second)) return ia->second < ib->second;
  }
  return ia == a.factors_.end() && ib != b.factors_.end();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  SupernaturalNumber parse() {
    if (text_.empty()) fail("empty expression");
    SupernaturalNumber out = term();
    while (pos_ < text_.size()) {
      expect('*');
      out = mul(out, term());
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("supernatural expression '" + text_ + "': " + why);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "' at offset " + std::to_string(pos_));
    }
    ++pos_;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number at offset " + std::to_string(start));
    return text_.substr(start, pos_ - start);
  }

  SupernaturalNumber term() {
    mpz_class base(digits());
    if (base == 0) fail("0 is not allowed");
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      Exponent e;
      if (text_.compare(pos_, 3, "inf") == 0) {
        pos_ += 3;
        e = Exponent::infinity();
      } else {
        e = Exponent(mpz_class(digits()));
      }
      if (!base.fits_ulong_p() || !is_prime(base.get_ui())) {
        fail("base " + base.get_str() + " carries an exponent but is not prime");
      }
      return SupernaturalNumber::prime_power(base.get_ui(), e);
    }
    if (!base.fits_ulong_p()) fail("natural " + base.get_str() + " too large to factorize");
    return SupernaturalNumber::from_natural(static_cast<std::uint64_t>(base.get_ui()));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

SupernaturalNumber parse_sn(std::string_view text) { return Parser(text).parse(); }

SupernaturalNumber mul(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  SupernaturalNumber out = a;
  for (const auto& [p, e] : b.factors_) out.set(p, a.exponent(p) + e);
  return out;
}

bool divides(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  for (const auto& [p, e] : a.factors()) {
    if (b.exponent(p) < e) return false;
  }
  return true;
}

SupernaturalNumber gcd(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  SupernaturalNumber out;
  for (const auto& [p, e] : a.factors_) out.set(p, min(e, b.exponent(p)));
  return out;
}

SupernaturalNumber lcm(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  SupernaturalNumber out = a;
  for (const auto& [p, e] : b.factors_) out.set(p, max(e, a.exponent(p)));
  return out;
}

SupernaturalNumber div_exact(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  if (b.is_supernatural()) {
    throw PreconditionError("division by " + b.to_string() + " with infinite exponent is ambiguous");
  }
  if (!divides(b, a)) throw PreconditionError(b.to_string() + " does not divide " + a.to_string());
  SupernaturalNumber out = a;
  for (const auto& [p, e] : b.factors_) {
    const Exponent& top = a.exponent(p);
    if (top.is_infinite()) continue;
    out.set(p, Exponent(mpz_class(top.value() - e.value())));
  }
  return out;
}

ClassKey class_key(const SupernaturalNumber& a) {
  ClassKey key;
  for (const auto& [p, e] : a.factors()) {
    if (e.is_infinite()) key.insert(p);
  }
  return key;
}

bool lesssim(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  // Under finite support, a | n*b for some natural n iff every infinite
  // prime of a is infinite in b.
  for (const auto& [p, e] : a.factors()) {
    if (e.is_infinite() && !b.exponent(p).is_infinite()) return false;
  }
  return true;
}

bool sim(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return lesssim(a, b) && lesssim(b, a);
}

std::pair<SupernaturalNumber, SupernaturalNumber> sim_witness(const SupernaturalNumber& a,
                                                               const SupernaturalNumber& b) {
  if (!sim(a, b)) {
    throw PreconditionError(a.to_string() + " and " + b.to_string() + " are not ~-equivalent");
  }
  SupernaturalNumber m;
  SupernaturalNumber n;
  auto visit = [&](Prime p) {
    Exponent ea = a.exponent(p);
    Exponent eb = b.exponent(p);
    if (ea.is_infinite()) return;  // both infinite
    if (ea < eb) {
      m = mul(m, SupernaturalNumber::prime_power(p, Exponent(mpz_class(eb.value() - ea.value()))));
    } else if (eb < ea) {
      n = mul(n, SupernaturalNumber::prime_power(p, Exponent(mpz_class(ea.value() - eb.value()))));
    }
  };
  for (const auto& [p, e] : a.factors()) visit(p);
  for (const auto& [p, e] : b.factors()) {
    if (a.exponent(p).is_zero()) visit(p);
  }
  if (!(mul(m, a) == mul(n, b))) throw VerificationError("sim_witness identity failed");
  return {m, n};
}

std::string to_string(const ClassKey& key) {
  std::string out = "{";
  bool first = true;
  for (Prime p : key) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(p);
  }
  return out + "}";
}

}  // namespace odocoe
