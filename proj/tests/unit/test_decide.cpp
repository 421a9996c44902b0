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
#include "instances.hpp"
#include "odocoe/decide.hpp"
#include "odocoe/dynamics.hpp"
#include "odocoe/error.hpp"
#include "oracles.hpp"

using namespace odocoe;

namespace {

SupernaturalList L(std::initializer_list<const char*> xs) {
  SupernaturalList out;
  for (const char* x : xs) out.push_back(parse_sn(x));
  return out;
}

SupernaturalNumber sn(const char* s) { return parse_sn(s); }

Rational q(std::int64_t a, std::int64_t b) { return Rational::reduced(a, b); }

void check_coe_certificate(const SupernaturalList& Ms, const SupernaturalList& Ns, const CoeDecision& d) {
  REQUIRE(d.equivalent);
  REQUIRE(d.sigma.size() == Ms.size());
  std::vector<bool> used(Ns.size(), false);
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    CHECK_FALSE(used[d.sigma[i]]);
    used[d.sigma[i]] = true;
    const auto& [m, n] = d.multipliers[i];
    CHECK(m.is_finite());
    CHECK(n.is_finite());
    CHECK(mul(m, Ms[i]) == mul(n, Ns[d.sigma[i]]));
  }
  SupernaturalNumber pm, pn;
  for (const auto& x : Ms) pm = mul(pm, x);
  for (const auto& x : Ns) pn = mul(pn, x);
  CHECK(pm == pn);
}

void check_conj_blocks(const SupernaturalList& Ms, const SupernaturalList& Ns, const ConjDecision& d) {
  for (const auto& b : d.blocks) {
    CHECK(class_key(b.L) == b.key);
    for (std::size_t t = 0; t < b.I.size(); ++t) {
      CHECK(mul(SupernaturalNumber::from_natural(b.m[t]), b.L) == Ms[b.I[t]]);
      CHECK(gcd(SupernaturalNumber::from_natural(b.m[t]), b.L).is_one());
    }
    for (std::size_t t = 0; t < b.J.size(); ++t) {
      CHECK(mul(SupernaturalNumber::from_natural(b.n[t]), b.L) == Ns[b.J[t]]);
      CHECK(gcd(SupernaturalNumber::from_natural(b.n[t]), b.L).is_one());
    }
    if (b.conjugator) {
      CHECK(b.conjugator->S * IntMatrix::diagonal(b.m) * b.conjugator->T == IntMatrix::diagonal(b.n));
      CHECK(is_unimodular(b.conjugator->S));
      CHECK(is_unimodular(b.conjugator->T));
    }
  }
}

}  // namespace

TEST_CASE("orbit equivalence examples") {
  const auto Ms = L({"5*2^inf", "3^inf"});
  const auto Ns = L({"2^inf", "5*3^inf"});
  const auto d = coe_decide(Ms, Ns);
  CHECK(d.equivalent);
  CHECK(d.sigma == std::vector<std::size_t>{0, 1});
  CHECK(d.multipliers[0].first == sn("1"));
  CHECK(d.multipliers[0].second == sn("5"));
  CHECK(d.multipliers[1].first == sn("5"));
  CHECK(d.multipliers[1].second == sn("1"));
  check_coe_certificate(Ms, Ns, d);

  const auto same = coe_decide(Ms, Ms);
  CHECK(same.equivalent);
  CHECK(same.sigma == std::vector<std::size_t>{0, 1});
  for (const auto& [m, n] : same.multipliers) {
    CHECK(m.is_one());
    CHECK(n.is_one());
  }

  const auto tot = coe_decide(L({"2^inf"}), L({"3*2^inf"}));
  CHECK_FALSE(tot.equivalent);
  CHECK(tot.obstruction == CoeObstruction::TotalProductMismatch);

  CHECK(coe_decide(L({"2^inf"}), L({"2^inf", "3^inf"})).obstruction == CoeObstruction::LengthMismatch);
  CHECK(coe_decide(L({"2^inf*3^inf", "5^inf"}), L({"2^inf*5^inf", "3^inf"})).obstruction ==
        CoeObstruction::ClassMultisetMismatch);

  // matching follows classes, not positions
  const auto sw = coe_decide(L({"3^inf", "2*2^inf"}), L({"2^inf", "2*3^inf"}));
  CHECK(sw.equivalent);
  CHECK(sw.sigma == std::vector<std::size_t>{1, 0});

  CHECK_THROWS_AS(coe_decide(L({"5"}), L({"5"})), PreconditionError);
  CHECK_THROWS_AS(conj_decide(L({"2^inf"}), L({"3"})), PreconditionError);
}

TEST_CASE("conjugacy examples") {
  const auto d1 = conj_decide(L({"5*2^inf", "3^inf"}), L({"2^inf", "5*3^inf"}));
  CHECK_FALSE(d1.conjugate);
  REQUIRE(d1.failing_block);
  CHECK(d1.blocks[*d1.failing_block].key == ClassKey{2});
  CHECK_FALSE(d1.blocks[*d1.failing_block].isomorphic);

  const auto Ms = L({"2*5^inf", "3*5^inf"});
  const auto Ns = L({"3*5^inf", "2*5^inf"});
  const auto d2 = conj_decide(Ms, Ns);
  CHECK(d2.conjugate);
  REQUIRE(d2.blocks.size() == 1);
  CHECK(d2.blocks[0].L == sn("5^inf"));
  check_conj_blocks(Ms, Ns, d2);
  CHECK(oracle::conj_bruteforce(Ms, Ns));

  const auto Ms3 = L({"2*5^inf", "2*5^inf"});
  const auto Ns3 = L({"4*5^inf", "5^inf"});
  CHECK_FALSE(conj_decide(Ms3, Ns3).conjugate);
  CHECK(coe_decide(Ms3, Ns3).equivalent);
  CHECK_FALSE(oracle::conj_bruteforce(Ms3, Ns3));

  // block sizes must agree
  const auto d4 = conj_decide(L({"2^inf", "2^inf"}), L({"2^inf", "3^inf"}));
  CHECK_FALSE(d4.conjugate);
}

TEST_CASE("canonical shared part") {
  CHECK(canonical_block_part(L({"4*3*5^inf", "4*5^inf"})) == sn("4*5^inf"));
  CHECK(canonical_block_part(L({"2*5^inf", "4*5^inf"})) == sn("5^inf"));
  CHECK(canonical_block_part(L({"2*5^inf"})) == sn("2*5^inf"));
}

TEST_CASE("conjugacy agrees with brute force on small instances") {
  const auto fs = testing::small_factors();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 400; ++t) {
    const std::size_t r = 1 + rng() % 2;
    SupernaturalList Ms, Ns;
    for (std::size_t i = 0; i < r; ++i) Ms.push_back(fs[rng() % fs.size()]);
    for (std::size_t i = 0; i < r; ++i) Ns.push_back(fs[rng() % fs.size()]);
    if (t % 2 == 0) {
      // bias toward shared classes
      for (std::size_t i = 0; i < r; ++i) {
        SupernaturalNumber x;
        for (Prime p : class_key(Ms[i])) x = mul(x, SupernaturalNumber::prime_power(p, Exponent::infinity()));
        for (Prime p : {2, 3, 5}) {
          if (!x.exponent(p).is_infinite() && rng() % 2) x = mul(x, SupernaturalNumber::prime_power(p, Exponent(1)));
        }
        Ns[i] = x;
      }
    }
    INFO(testing::to_string(Ms), " vs ", testing::to_string(Ns));
    const auto d = conj_decide(Ms, Ns);
    CHECK(d.conjugate == oracle::conj_bruteforce(Ms, Ns));
    check_conj_blocks(Ms, Ns, d);
    if (d.conjugate) CHECK(coe_decide(Ms, Ns).equivalent);
  }
}

TEST_CASE("subset invariant") {
  const auto k = k_invariant(L({"2^inf"}));
  CHECK(k.rank == 1);
  REQUIRE(k.entries.size() == 2);
  CHECK(k.entries[0].product.is_one());
  CHECK(k.entries[0].key.empty());
  CHECK(k.entries[1].product == sn("2^inf"));
  CHECK(k.entries[1].key == ClassKey{2});
  CHECK(k.total == sn("2^inf"));

  CHECK(k_invariant_equal(k_invariant(L({"5*2^inf", "3^inf"})), k_invariant(L({"2^inf", "5*3^inf"}))));
  CHECK_FALSE(k_invariant_equal(k_invariant(L({"2^inf"})), k_invariant(L({"3^inf"}))));
  CHECK_FALSE(k_invariant_equal(k_invariant(L({"2^inf", "2^inf"})), k_invariant(L({"2^inf"}))));

  const auto k3 = k_invariant(L({"2^inf", "3^inf", "5*5^inf"}));
  CHECK(k3.entries.size() == 8);
  CHECK(k3.entries[5].product == sn("2^inf*5^inf"));
  CHECK(k3.entries[5].subset == 5);

  for (const auto& inst : testing::random_suite(99, 60)) {
    INFO(testing::to_string(inst));
    const bool kin = k_invariant_equal(k_invariant(inst.M), k_invariant(inst.N));
    const auto d = coe_decide(inst.M, inst.N);
    CHECK(kin == d.equivalent);
    CHECK(d.equivalent == oracle::coe_bruteforce(inst.M, inst.N));
    if (d.equivalent) check_coe_certificate(inst.M, inst.N, d);
  }
}

TEST_CASE("eigenvalue groups") {
  CHECK(eig_group(sn("2^inf"), 1) == TGroup(sn("2^inf")));
  CHECK(eig_group(sn("2^inf"), 0) == TGroup(sn("1")));
  CHECK(eig_group(sn("3*2^inf"), 3) == TGroup(sn("2^inf")));
  CHECK(eig_group(sn("3*2^inf"), -6) == TGroup(sn("2^inf")));
  CHECK(eig_group(sn("9*2^inf"), 3) == TGroup(sn("3*2^inf")));

  const std::set<Rational> quarter = {q(0, 1), q(1, 4), q(1, 2), q(3, 4)};
  CHECK(eig_group_oracle(sn("2^inf"), 1, 2) == quarter);
  CHECK(eig_group_oracle(sn("2^inf"), 2, 2) == std::set<Rational>{q(0, 1), q(1, 2)});
  CHECK_THROWS_AS(eig_group_oracle(sn("2^inf"), 1, 20), PreconditionError);

  CHECK(q(6, 8) == Rational{3, 4});
  CHECK(q(-1, 4) == Rational{3, 4});
  CHECK(q(4, 4) == Rational{0, 1});

  for (const char* s : {"2^inf", "3*2^inf", "2^2*3^inf*5", "2^inf*5^inf"}) {
    const auto M = sn(s);
    for (std::int64_t k = -6; k <= 6; ++k) {
      for (unsigned level = 0; level <= 3; ++level) {
        const std::int64_t m = Factor::odometer(M).level_modulus(level);
        INFO(s, " k=", k, " level=", level);
        const auto expect = oracle::translation_eigenvalues(m, k);
        CHECK(eig_group_oracle(M, k, level) == expect);
        const auto D = eig_level_index(M, k, level);
        CHECK(finite_tgroup_elements(D) == expect);
        CHECK(divides(D, eig_group(M, k).index()));
        for (const auto& r : expect) CHECK(oracle::in_tgroup(eig_group(M, k).index(), r));
      }
    }
  }
}

TEST_CASE("eigenvalue group lattice") {
  CHECK_FALSE(tgroup_subset(TGroup(sn("3^inf")), TGroup(sn("5*2^inf"))));
  CHECK(tgroup_subset(TGroup(sn("2^inf")), TGroup(sn("5*2^inf"))));
  CHECK(tgroup_product(TGroup(sn("2^inf")), TGroup(sn("3"))) == TGroup(sn("3*2^inf")));
  CHECK(TGroup(sn("4")).contains(q(3, 4)));
  CHECK_FALSE(TGroup(sn("4")).contains(q(1, 8)));
  CHECK(TGroup(sn("2^inf")).contains(q(5, 1024)));
}

TEST_CASE("free group counterexample") {
  const auto rep = free_group_counterexample_check(2, 3, 5);
  CHECK(rep.coe.status == FactStatus::Cited);
  CHECK(rep.coe.holds);
  CHECK(rep.conjugate.status == FactStatus::Certified);
  CHECK(rep.conjugate.holds);
  CHECK(rep.conjugate.statement.find("not conjugate") != std::string::npos);
  CHECK(rep.comparisons.size() == 3);
  for (const auto& f : rep.comparisons) {
    CHECK(f.status == FactStatus::Certified);
    CHECK(f.holds);
  }
  CHECK(rep.e_gamma == TGroup(sn("5*2^inf")));
  CHECK(rep.certified());
  CHECK(free_group_counterexample_check(3, 2, 7).certified());
  CHECK(free_group_counterexample_check(5, 7, 6).certified());

  CHECK_THROWS_AS(free_group_counterexample_check(2, 3, 1), PreconditionError);
  CHECK_THROWS_AS(free_group_counterexample_check(2, 3, 4), PreconditionError);
  CHECK_THROWS_AS(free_group_counterexample_check(2, 2, 5), PreconditionError);
  CHECK_THROWS_AS(free_group_counterexample_check(4, 3, 5), PreconditionError);
}
