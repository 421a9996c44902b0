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
#include "odocoe/certificate.hpp"
#include "odocoe/error.hpp"
#include "odocoe/witness.hpp"

using namespace odocoe;

namespace {

SupernaturalList L(std::initializer_list<const char*> xs) {
  SupernaturalList out;
  for (const char* x : xs) out.push_back(parse_sn(x));
  return out;
}

Json reseal(Json cert) {
  cert["hash"] = content_hash(cert);
  return cert;
}

Json roundtrip(const Json& j) { return Json::parse(j.dump(2)); }

}  // namespace

TEST_CASE("decision certificates verify and detect tampering") {
  const auto Ms = L({"5*2^inf", "3^inf"});
  const auto Ns = L({"2^inf", "5*3^inf"});
  const Json coe = coe_certificate(Ms, Ns, coe_decide(Ms, Ns));
  CHECK(coe.at("kind") == "coe");
  CHECK(coe.at("format") == kCertificateFormat);
  CHECK(coe.at("hash").get<std::string>().size() == 64);
  CHECK(verify_certificate(roundtrip(coe)).passed);

  Json edited = coe;
  edited["decision"]["multipliers"][0][1] = "7";
  CHECK_FALSE(verify_certificate(edited).passed);
  const auto resealed = verify_certificate(reseal(edited));
  CHECK_FALSE(resealed.passed);
  CHECK(resealed.lines.front().rfind("ok", 0) == 0);

  const Json conj = conj_certificate(Ms, Ns, conj_decide(Ms, Ns));
  CHECK(verify_certificate(roundtrip(conj)).passed);
  Json flipped = conj;
  flipped["decision"]["conjugate"] = true;
  CHECK_THROWS_AS(verify_certificate(reseal(flipped)), ParseError);
  flipped["decision"]["conjugate"] = false;
  flipped["decision"]["reason"] = "edited";
  CHECK_FALSE(verify_certificate(reseal(flipped)).passed);

  const auto Ps = L({"2*5^inf", "3*5^inf"});
  const auto Qs = L({"3*5^inf", "2*5^inf"});
  const Json pos = conj_certificate(Ps, Qs, conj_decide(Ps, Qs));
  CHECK(verify_certificate(pos).passed);
  Json bad_s = pos;
  bad_s["decision"]["blocks"][0]["S"]["entries"][0][0] = "9";
  CHECK_FALSE(verify_certificate(reseal(bad_s)).passed);
}

TEST_CASE("hashes ignore formatting but not content") {
  const auto Ms = L({"2^inf"});
  const Json c = coe_certificate(Ms, Ms, coe_decide(Ms, Ms));
  CHECK(content_hash(c) == c.at("hash"));
  CHECK(content_hash(roundtrip(c)) == c.at("hash"));
  Json d = c;
  d["tool"] = "other";
  CHECK(content_hash(d) != c.at("hash"));
}

TEST_CASE("witness certificates") {
  const auto w = build_basic_coe(2, parse_sn("3^inf"));
  const Json cert = roundtrip(witness_certificate(w, 3, 4));
  const auto check = verify_certificate(cert);
  CHECK(check.passed);
  REQUIRE(check.report);
  CHECK(check.report->passed());
  CHECK(check.report->level() == 3);
  CHECK(verify_certificate(cert, 2u, 3u).report->radius() == 3);

  const CoeWitness back = coe_witness_from_json(cert.at("witness"));
  CHECK(back.source() == w.source());
  CHECK(verify_coe(back, 3, 4).passed());

  // corrupt one table value and reseal: verification, not the hash, catches it
  Json bad = cert;
  auto& values = bad["witness"]["phi"]["values"];
  REQUIRE(values.size() > 2);
  values[2] = values[2].get<std::int64_t>() == 0 ? 1 : 0;
  const auto broken = verify_certificate(reseal(bad));
  CHECK_FALSE(broken.passed);
  REQUIRE(broken.report);
  CHECK_FALSE(broken.report->passed());

  const auto Ms = L({"2*3^inf", "3^inf"});
  const auto Ns = L({"3^inf", "2*3^inf"});
  const auto d = conj_decide(Ms, Ns);
  const auto cw = build_conj_witness(Ms, Ns, d);
  const Json cc = roundtrip(conj_certificate(Ms, Ns, d, &cw, 3, 4));
  CHECK(cc.at("kind") == "conj-witness");
  CHECK(verify_certificate(cc).passed);
  CHECK(conj_witness_from_json(cc.at("witness")).rho == cw.rho);
}

TEST_CASE("tables round-trip through JSON") {
  const auto w = build_basic_coe(3, parse_sn("2^inf"));
  const PointTable t = materialize(w.phi, 2);
  const PointTable t2 = point_table_from_json(roundtrip(to_json(t)));
  CHECK(t2.source == t.source);
  CHECK(t2.target == t.target);
  CHECK(t2.modulus == t.modulus);
  CHECK(t2.values == t.values);
  const CocycleData c = materialize(w.a);
  const CocycleData c2 = cocycle_data_from_json(roundtrip(to_json(c)));
  CHECK(c2.values == c.values);
  CHECK(c2.target == c.target);
  const IntMatrix m(2, 2, {1, -2, mpz_class("123456789012345678901234567890"), 4});
  CHECK(matrix_from_json(roundtrip(to_json(m))) == m);
}

TEST_CASE("counterexample certificates") {
  const Json c = counterexample_certificate(free_group_counterexample_check(2, 3, 5));
  CHECK(verify_certificate(roundtrip(c)).passed);
  Json forged = c;
  forged["decision"]["coe"]["status"] = "certified";
  CHECK_FALSE(verify_certificate(reseal(forged)).passed);
}

TEST_CASE("malformed certificates") {
  CHECK_THROWS_AS(verify_certificate(Json::object()), ParseError);
  CHECK_THROWS_AS(verify_certificate(Json::array()), ParseError);
  const auto Ms = L({"2^inf"});
  Json c = coe_certificate(Ms, Ms, coe_decide(Ms, Ms));
  Json wrong_format = c;
  wrong_format["format"] = "something-else";
  CHECK_THROWS_AS(verify_certificate(wrong_format), ParseError);
  Json wrong_version = c;
  wrong_version["version"] = 99;
  CHECK_THROWS_AS(verify_certificate(wrong_version), ParseError);
  Json wrong_kind = c;
  wrong_kind["kind"] = "mystery";
  CHECK_THROWS_AS(verify_certificate(reseal(wrong_kind)), ParseError);
  Json bad_input = c;
  bad_input["inputs"]["M"] = Json::array({"2^"});
  CHECK_THROWS_AS(verify_certificate(reseal(bad_input)), ParseError);
  Json no_witness = c;
  no_witness["kind"] = "coe-witness";
  CHECK_THROWS_AS(verify_certificate(reseal(no_witness)), ParseError);
  CHECK_THROWS_AS(point_table_from_json(Json{{"source", "2^inf"}}), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 1}, {"cols", 1}, {"entries", Json::array({"7"})}}), ParseError);
  const auto w = build_basic_coe(2, parse_sn("3^inf"));
  Json short_table = witness_certificate(w, 2, 2);
  short_table["witness"]["phi"]["values"].erase(0);
  CHECK_THROWS_AS(verify_certificate(reseal(short_table)), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 1}, {"cols", 1}, {"entries", Json::array({Json::array({"x"})})}}), ParseError);
}
