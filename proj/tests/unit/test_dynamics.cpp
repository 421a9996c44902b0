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

#include <set>
#include <stdexcept>

#include "doctest.h"
#include "odocoe/dynamics.hpp"
#include "odocoe/error.hpp"

using namespace odocoe;

namespace {

Factor odo(const char* s) { return Factor::odometer(parse_sn(s)); }

PointAtLevel pt(unsigned k, std::vector<std::int64_t> r) { return PointAtLevel{k, std::move(r)}; }

std::vector<SystemSpec> test_specs() {
  return {
      SystemSpec({odo("2^inf")}),
      SystemSpec({Factor::cyclic(2), odo("3^inf")}),
      SystemSpec({odo("5*2^inf"), odo("3^inf")}),
      SystemSpec({odo("2^inf*3^2"), Factor::cyclic(3)}),
  };
}

// every element of the box [-R, R]^rank
std::vector<GroupElement> box(std::size_t rank, std::int64_t R) {
  std::vector<GroupElement> out;
  GroupElement g(rank, -R);
  for (;;) {
    out.push_back(g);
    std::size_t i = 0;
    while (i < rank && g[i] == R) g[i++] = -R;
    if (i == rank) break;
    ++g[i];
  }
  return out;
}

}  // namespace

TEST_CASE("level moduli") {
  CHECK(odo("2^inf*3^2").level_modulus(3) == 72);
  CHECK(Factor::cyclic(5).level_modulus(1) == 5);
  CHECK(odo("5*2^inf").level_modulus(1) == 10);
  CHECK(Factor::cyclic(7).level_modulus(0) == 7);
  CHECK(odo("2^inf*3^2").level_modulus(0) == 1);
  CHECK_THROWS_AS(odo("2^inf").level_modulus(70), std::overflow_error);
  CHECK_THROWS_AS(odo("5"), PreconditionError);
  CHECK_THROWS_AS(Factor::cyclic(0), PreconditionError);

  for (const char* s : {"2^inf", "5*2^inf*3^2", "7^inf*11^inf", "2^3*13^inf"}) {
    const Factor f = odo(s);
    for (unsigned k = 0; k < 8; ++k) {
      CHECK(f.level_modulus(k + 1) % f.level_modulus(k) == 0);
      CHECK(f.level_modulus(k) <= f.level_modulus(k + 1));
    }
  }
}

TEST_CASE("least level for a modulus") {
  CHECK(min_level_for(odo("2^inf"), 8) == 3);
  CHECK(min_level_for(odo("5*2^inf"), 5) == 1);
  CHECK(min_level_for(odo("5*2^inf"), 1) == 0);
  CHECK(min_level_for(odo("2^inf*3^2"), 36) == 2);
  CHECK_THROWS_AS(min_level_for(odo("2^inf"), 3), PreconditionError);
  CHECK_THROWS_AS(min_level_for(odo("3*2^inf"), 9), PreconditionError);
  for (const char* s : {"2^inf*3^2", "5*3^inf"}) {
    const Factor f = odo(s);
    for (std::int64_t d : {1, 2, 3, 4, 9, 15, 27, 45}) {
      unsigned k = 0;
      try {
        k = min_level_for(f, d);
      } catch (const PreconditionError&) {
        continue;
      }
      CHECK(f.level_modulus(k) % d == 0);
      if (k > 0) CHECK(f.level_modulus(k - 1) % d != 0);
    }
  }
}

TEST_CASE("system literals") {
  const SystemSpec s = parse_system_spec("odo:5*2^inf,cyc:3, 3^inf");
  REQUIRE(s.size() == 3);
  CHECK(s.factor(0) == odo("5*2^inf"));
  CHECK(s.factor(1) == Factor::cyclic(3));
  CHECK(s.factor(2) == odo("3^inf"));
  CHECK(parse_system_spec(s.to_string()) == s);
  CHECK(s.acting_group().moduli == std::vector<std::int64_t>{0, 3, 0});
  CHECK(s.moduli(2) == std::vector<std::int64_t>{20, 3, 9});
  CHECK(s.point_count(2) == 540);

  CHECK_THROWS_AS(parse_system_spec(""), ParseError);
  CHECK_THROWS_AS(parse_system_spec("odo:5"), ParseError);
  CHECK_THROWS_AS(parse_system_spec("cyc:2^inf"), ParseError);
  CHECK_THROWS_AS(parse_system_spec("odo:2^inf,,cyc:2"), ParseError);
  CHECK_THROWS_AS(parse_system_spec("foo:2"), ParseError);
}

TEST_CASE("translation action") {
  const SystemSpec two({odo("2^inf")});
  CHECK(act(two, {3}, pt(3, {6})) == pt(3, {1}));
  CHECK(act(two, {0}, pt(3, {5})) == pt(3, {5}));
  CHECK(act(two, {-7}, pt(3, {5})) == pt(3, {6}));

  const SystemSpec mixed({Factor::cyclic(2), odo("3^inf")});
  CHECK(act(mixed, {1, 2}, pt(1, {1, 1})) == pt(1, {0, 0}));
  CHECK_THROWS_AS(act(mixed, {1}, pt(1, {1, 1})), PreconditionError);
  CHECK_THROWS_AS(act(mixed, {1, 1}, pt(1, {2, 1})), PreconditionError);
}

TEST_CASE("projection") {
  const SystemSpec two({odo("2^inf")});
  CHECK(project(two, pt(3, {6})) == pt(2, {2}));
  CHECK_THROWS_AS(project(two, pt(0, {0})), PreconditionError);

  const SystemSpec mixed({Factor::cyclic(5), odo("3^inf")});
  CHECK(project(mixed, pt(2, {4, 7})) == pt(1, {4, 1}));
  CHECK(project_to(mixed, pt(3, {4, 26}), 1) == pt(1, {4, 2}));
  CHECK_THROWS_AS(project_to(mixed, pt(1, {4, 2}), 2), PreconditionError);
}

TEST_CASE("enumeration and orbits") {
  const SystemSpec two({odo("2^inf")});
  const auto pts = enumerate_points(two, 1);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == pt(1, {0}));
  CHECK(pts[1] == pt(1, {1}));

  const SystemSpec cyc({Factor::cyclic(2), Factor::cyclic(3)});
  for (unsigned k = 0; k < 4; ++k) CHECK(enumerate_points(cyc, k).size() == 6);

  const auto o = orbit(two, pt(2, {1}), {1}, 5);
  REQUIRE(o.size() == 6);
  CHECK(o.front() == pt(2, {1}));
  CHECK(o[3] == pt(2, {0}));
  CHECK(o[4] == pt(2, {1}));

  CHECK_THROWS_AS(enumerate_points(two, 21, 1000), PreconditionError);

  const SystemSpec s({odo("5*2^inf"), Factor::cyclic(3)});
  const auto all = enumerate_points(s, 2);
  const LevelIndex index(s, 2);
  REQUIRE(index.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(index.point(i) == all[i]);
    CHECK(index.index_of(all[i].residues) == i);
    if (i > 0) CHECK(all[i - 1].residues < all[i].residues);
  }
  const LevelIndex low(s, 1);
  for (const auto& x : enumerate_points(s, 3)) {
    CHECK(low.point(low.index_of_projection(x.residues)) == project_to(s, x, 1));
  }
}

TEST_CASE("action laws on every test system") {
  for (const auto& spec : test_specs()) {
    INFO(spec.to_string());
    const auto G = spec.acting_group();
    const auto gs = box(spec.size(), 4);
    for (unsigned k = 0; k <= 3; ++k) {
      const auto pts = enumerate_points(spec, k);
      std::set<std::vector<std::int64_t>> distinct;
      for (const auto& x : pts) {
        check_point(spec, x);
        distinct.insert(x.residues);
      }
      CHECK(distinct.size() == spec.point_count(k));
      for (const auto& x : pts) {
        CHECK(act(spec, G.identity(), x) == x);
        for (std::size_t a = 0; a < gs.size(); a += 3) {
          const auto& g = gs[a];
          const auto gx = act(spec, g, x);
          CHECK(act(spec, G.negate(g), gx) == x);
          if (k >= 1) CHECK(project(spec, gx) == act(spec, g, project(spec, x)));
          for (std::size_t b = 0; b < gs.size(); b += 17) {
            const auto& h = gs[b];
            CHECK(act(spec, G.add(g, h), x) == act(spec, g, act(spec, h, x)));
          }
        }
      }
      // translation by 1 is a full cycle on each coordinate
      const auto m = spec.moduli(k);
      for (std::size_t i = 0; i < spec.size(); ++i) {
        SystemSpec single({spec.factor(i)});
        const auto o = orbit(single, pt(k, {0}), {1}, static_cast<std::size_t>(m[i]));
        std::set<std::int64_t> seen;
        for (std::size_t t = 0; t + 1 < o.size(); ++t) seen.insert(o[t].residues[0]);
        CHECK(seen.size() == static_cast<std::size_t>(m[i]));
        CHECK(o.back() == o.front());
      }
    }
  }
}

TEST_CASE("group descriptors") {
  const GroupDescriptor G{{0, 4}};
  CHECK_FALSE(G.is_free());
  CHECK(GroupDescriptor{{0, 0}}.is_free());
  CHECK(G.normalize({-3, -3}) == GroupElement{-3, 1});
  CHECK(G.add({1, 3}, {2, 3}) == GroupElement{3, 2});
  CHECK(G.sub({1, 0}, {2, 1}) == GroupElement{-1, 3});
  CHECK(G.equal({5, 7}, {5, 3}));
  CHECK(G.generator(1) == GroupElement{0, 1});
  CHECK_THROWS_AS(G.add({1}, {1, 1}), PreconditionError);
}
