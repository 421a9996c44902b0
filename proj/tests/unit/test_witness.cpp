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

#include "doctest.h"
#include "odocoe/decide.hpp"
#include "odocoe/error.hpp"
#include "odocoe/witness.hpp"

using namespace odocoe;

namespace {

SupernaturalList L(std::initializer_list<const char*> xs) {
  SupernaturalList out;
  for (const char* x : xs) out.push_back(parse_sn(x));
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

bool same_on_level(const PointMap& f, const PointMap& g, unsigned k) {
  const unsigned l = std::max(f.modulus(k), g.modulus(k));
  for (const auto& x : enumerate_points(f.source(), l)) {
    if (!(f(k, x) == g(k, x))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("carry split") {
  // x = c + l y moved by g lands on c' + l y' with c' = (c + g) mod l and
  // l (y' - y) = c + g - c'.
  for (std::int64_t l = 1; l <= 7; ++l) {
    for (std::int64_t c = 0; c < l; ++c) {
      for (std::int64_t g = -20; g <= 20; ++g) {
        const auto [j, h] = carry_split(l, g, c);
        CHECK(j == floor_mod(g, l));
        CHECK(h == c + g - floor_mod(c + g, l));
        CHECK(h % l == 0);
      }
    }
  }
  // the boundary case c + j = l carries
  CHECK(carry_split(3, 1, 2) == std::pair<std::int64_t, std::int64_t>{1, 3});
  CHECK(carry_split(3, 1, 1) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(carry_split(3, 2, 1) == std::pair<std::int64_t, std::int64_t>{2, 3});
  CHECK(carry_split(3, 4, 0) == std::pair<std::int64_t, std::int64_t>{1, 3});
}

TEST_CASE("basic splitting") {
  const auto id = build_basic_coe(1, parse_sn("2^inf"));
  CHECK(id.source() == parse_system_spec("2^inf"));
  CHECK(id.target() == parse_system_spec("2^inf"));
  CHECK(same_on_level(id.phi, PointMap::identity(id.source()), 3));

  const auto w = build_basic_coe(2, parse_sn("3^inf"));
  CHECK(w.source() == parse_system_spec("2*3^inf"));
  CHECK(w.target() == parse_system_spec("cyc:2,3^inf"));
  CHECK(verify_coe(w, 4, 6).passed());

  // a(1, x) = ([1], 0) below the top residue class, ([1], l) at it
  const auto w3 = build_basic_coe(3, parse_sn("2^inf"));
  const GroupMap& a = w3.a.generator(0);
  CHECK(a.modulus() == 1);
  for (const auto& x : enumerate_points(w3.source(), 3)) {
    const std::int64_t c = x.residues[0] % 3;
    CHECK(a(x) == GroupElement{1, c == 2 ? 1 : 0});
    CHECK(extend_cocycle(w3.a, {-4}, x) == extend_cocycle(w3.a, {-4}, PointAtLevel{1, {x.residues[0] % 6}}));
  }
  for (bool tight : locality_audit(w3.a)) CHECK(tight);
  for (bool tight : locality_audit(w3.b)) CHECK(tight);

  CHECK_THROWS_AS(build_basic_coe(0, parse_sn("2^inf")), PreconditionError);
  CHECK_THROWS_AS(build_basic_coe(2, parse_sn("3")), PreconditionError);
}

TEST_CASE("finite merges") {
  const std::int64_t a[] = {2, 3};
  const std::int64_t b[] = {6};
  const auto w = build_finite_coe(a, b);
  CHECK(w.source() == parse_system_spec("cyc:2,cyc:3"));
  CHECK(w.target() == parse_system_spec("cyc:6"));
  CHECK(verify_coe(w, 0, 6).passed());

  const std::int64_t n[] = {5};
  const auto id = build_finite_coe(n, n);
  CHECK(same_on_level(id.phi, PointMap::identity(id.source()), 0));

  const std::int64_t two[] = {2, 2};
  const std::int64_t four[] = {4};
  const auto v = build_finite_coe(two, four);
  CHECK(verify_coe(v, 0, 4).passed());
  // not a conjugacy: no homomorphism Z/2 x Z/2 -> Z/4 works
  int tried = 0;
  for (long r0 = 0; r0 < 4; ++r0) {
    for (long r1 = 0; r1 < 4; ++r1) {
      ++tried;
      const ConjWitness c{IntMatrix(1, 2, {r0, r1}), v.phi, v.psi};
      CHECK_FALSE(verify_conj(c, 0, 4).passed());
    }
  }
  CHECK(tried == 16);
  const std::int64_t seven[] = {7};
  CHECK_THROWS_AS(build_finite_coe(two, seven), PreconditionError);
}

TEST_CASE("conjugacy witnesses") {
  const auto Ms = L({"2*3^inf", "3^inf"});
  const auto Ns = L({"3^inf", "2*3^inf"});
  const auto d = conj_decide(Ms, Ns);
  REQUIRE(d.conjugate);
  const auto w = build_conj_witness(Ms, Ns, d);
  CHECK(verify_conj(w, 3, 4).passed());
  CHECK(is_unimodular(w.rho));
  for (unsigned k = 0; k < 3; ++k) {
    for (const auto& x : enumerate_points(w.source(), w.phi.modulus(k + 1))) {
      CHECK(project(w.target(), w.phi(k + 1, x)) == w.phi(k, x));
    }
  }

  const auto same = L({"5*2^inf"});
  const auto ws = build_conj_witness(same, same, conj_decide(same, same));
  CHECK(same_on_level(ws.phi, PointMap::identity(ws.source()), 3));
  CHECK(ws.rho == IntMatrix::identity(1));

  const auto bad = L({"2^inf"});
  const auto other = L({"3*2^inf"});
  CHECK_THROWS_AS(build_conj_witness(bad, other, conj_decide(bad, other)), PreconditionError);
}

TEST_CASE("orbit equivalence witnesses") {
  const auto Ms = L({"5*2^inf", "3^inf"});
  const auto Ns = L({"2^inf", "5*3^inf"});
  const auto w = build_coe_witness(Ms, Ns, coe_decide(Ms, Ns));
  CHECK(w.source() == SystemSpec::odometers(Ms));
  CHECK(w.target() == SystemSpec::odometers(Ns));
  const auto rep = verify_coe(w, 4, 6);
  CHECK(rep.passed());
  CHECK(rep.checks().at("a: injective on box").failed == 0);
  CHECK(rep.checks().at("b: injective on box").failed == 0);

  const auto back = build_coe_witness(Ns, Ms, coe_decide(Ns, Ms));
  const auto round = compose_coe(w, back);
  CHECK(round.source() == round.target());
  CHECK(verify_coe(round, 3, 4).passed());
  // b(a(g,x), phi(x)) = g makes the round trip the identity relation
  CHECK(same_on_level(round.phi, PointMap::identity(round.source()), 3));

  const auto same = build_coe_witness(Ms, Ms, coe_decide(Ms, Ms));
  CHECK(same_on_level(same.phi, PointMap::identity(same.source()), 3));

  const auto bad = L({"2^inf"});
  const auto other = L({"3^inf"});
  CHECK_THROWS_AS(build_coe_witness(bad, other, coe_decide(bad, other)), PreconditionError);
}
