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

#include <random>

#include "doctest.h"
#include "odocoe/error.hpp"
#include "odocoe/supernatural.hpp"

using namespace odocoe;

namespace {

SupernaturalNumber sn(const char* s) { return parse_sn(s); }

SupernaturalNumber random_sn(std::mt19937_64& rng, bool allow_inf = true) {
  static const Prime primes[] = {2, 3, 5, 7};
  SupernaturalNumber out;
  for (Prime p : primes) {
    const int e = static_cast<int>(rng() % (allow_inf ? 5 : 4));
    if (e == 0) continue;
    out = mul(out, SupernaturalNumber::prime_power(p, e == 4 ? Exponent::infinity() : Exponent(e)));
  }
  return out;
}

// a <~ b: some natural n with a | n b, i.e. every infinite prime of a is infinite in b.
bool lesssim_by_definition(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  for (const auto& [p, e] : a.factors()) {
    if (e.is_infinite() && !b.exponent(p).is_infinite()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse and print") {
  const auto x = sn("2^inf*3^2");
  CHECK(x.exponent(2).is_infinite());
  CHECK(x.exponent(3) == Exponent(2));
  CHECK(x.exponent(5).is_zero());
  CHECK(x.to_string() == "2^inf*3^2");

  const auto twelve = sn("12");
  CHECK(twelve.exponent(2) == Exponent(2));
  CHECK(twelve.exponent(3) == Exponent(1));
  CHECK(twelve.to_string() == "2^2*3");
  CHECK(sn("1").is_one());
  CHECK(sn(" 5 * 2^inf ") == sn("2^inf*5"));
  CHECK(sn("2^3*2") == sn("16"));

  CHECK_THROWS_AS(sn("0"), ParseError);
  CHECK_THROWS_AS(sn(""), ParseError);
  CHECK_THROWS_AS(sn("4^2"), ParseError);
  CHECK_THROWS_AS(sn("2^"), ParseError);
  CHECK_THROWS_AS(sn("2**3"), ParseError);
  CHECK_THROWS_AS(sn("x"), ParseError);
}

TEST_CASE("big exponents stay exact") {
  const auto x = sn("2^123456789012345678901234567890");
  CHECK(x.exponent(2).value() == mpz_class("123456789012345678901234567890"));
  CHECK(mul(x, x).exponent(2).value() == mpz_class("246913578024691357802469135780"));
}

TEST_CASE("multiplication") {
  CHECK(mul(sn("2^inf"), sn("2^3*5")) == sn("2^inf*5"));
  CHECK(mul(sn("3^2"), sn("3")) == sn("3^3"));
  CHECK(mul(sn("7^inf*2"), sn("1")) == sn("7^inf*2"));
  CHECK((Exponent::infinity() + Exponent(3)).is_infinite());
  CHECK(Exponent(3) < Exponent::infinity());
}

TEST_CASE("divisibility, gcd, lcm, exact division") {
  CHECK(divides(sn("12"), sn("3*2^inf")));
  CHECK_FALSE(divides(sn("5"), sn("2^inf")));
  CHECK(divides(sn("2^inf"), sn("2^inf*3")));
  CHECK(gcd(sn("6*2^inf"), sn("4")) == sn("4"));
  CHECK(lcm(sn("2^inf"), sn("3^inf")) == sn("2^inf*3^inf"));
  CHECK(gcd(sn("2^inf*3"), sn("1")).is_one());
  CHECK(div_exact(sn("5*2^inf"), sn("5")) == sn("2^inf"));
  CHECK(div_exact(sn("7^inf*3"), sn("1")) == sn("7^inf*3"));
  CHECK_THROWS_AS(div_exact(sn("2^inf"), sn("2^inf")), PreconditionError);
  CHECK_THROWS_AS(div_exact(sn("3"), sn("9")), PreconditionError);
}

TEST_CASE("equivalence of supernatural numbers") {
  CHECK(lesssim(sn("5*2^inf"), sn("2^inf")));
  CHECK_FALSE(lesssim(sn("2^inf"), sn("3^inf")));
  CHECK_FALSE(lesssim(sn("2^inf*3^inf"), sn("2^inf")));
  CHECK(sim(sn("5*2^inf"), sn("2^inf")));
  CHECK_FALSE(sim(sn("2^inf"), sn("3^inf")));

  const auto [m, n] = sim_witness(sn("5*2^inf"), sn("2^inf"));
  CHECK(m == sn("1"));
  CHECK(n == sn("5"));
  const auto [m1, n1] = sim_witness(sn("3*7^inf"), sn("3*7^inf"));
  CHECK(m1.is_one());
  CHECK(n1.is_one());
  CHECK_THROWS_AS(sim_witness(sn("2^inf"), sn("3^inf")), PreconditionError);

  CHECK(class_key(sn("5*2^inf")) == ClassKey{2});
  CHECK(class_key(sn("12")).empty());
  CHECK(class_key(sn("2^inf*3^inf")) == ClassKey{2, 3});
  CHECK(to_string(ClassKey{2, 3}) == "{2,3}");
}

TEST_CASE("natural conversion") {
  CHECK(sn("2^3*5").to_int64() == 40);
  CHECK(sn("2^3*5").to_natural() == 40);
  CHECK_THROWS(sn("2^inf").to_int64());
  CHECK_THROWS(sn("2^80").to_int64());
  CHECK(SupernaturalNumber::from_natural(1).is_one());
  CHECK_THROWS_AS(SupernaturalNumber::from_natural(0), PreconditionError);
  CHECK(SupernaturalNumber::from_natural(mpz_class(360)) == sn("2^3*3^2*5"));
}

TEST_CASE("primality agrees with a sieve") {
  std::vector<bool> composite(2000, false);
  for (std::uint64_t i = 2; i < 2000; ++i) {
    for (std::uint64_t j = 2 * i; j < 2000; j += i) composite[j] = true;
  }
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime(n) == (n >= 2 && !composite[n]));
}

TEST_CASE("algebraic laws on random values") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const auto a = random_sn(rng);
    const auto b = random_sn(rng);
    const auto c = random_sn(rng);
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, SupernaturalNumber()) == a);
    CHECK(mul(gcd(a, b), lcm(a, b)) == mul(a, b));
    CHECK(divides(gcd(a, b), a));
    CHECK(divides(a, lcm(a, b)));
    CHECK(divides(a, a));
    if (divides(a, b) && divides(b, a)) CHECK(a == b);
    if (divides(a, b) && divides(b, c)) CHECK(divides(a, c));
    CHECK(lesssim(a, b) == lesssim_by_definition(a, b));
    CHECK(sim(a, b) == (lesssim_by_definition(a, b) && lesssim_by_definition(b, a)));
    CHECK(a.is_supernatural() == !class_key(a).empty());
    if (sim(a, b)) {
      const auto [m, n] = sim_witness(a, b);
      CHECK(m.is_finite());
      CHECK(n.is_finite());
      CHECK(mul(m, a) == mul(n, b));
      CHECK(divides(n, a));
      CHECK(divides(m, b));
    }
    const auto f = random_sn(rng, false);
    if (divides(f, a)) CHECK(mul(div_exact(a, f), f) == a);
    CHECK(parse_sn(a.to_string()) == a);
  }
}
