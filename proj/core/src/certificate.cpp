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

#include "odocoe/certificate.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#include "odocoe/error.hpp"
#include "odocoe/witness.hpp"

#ifndef ODOCOE_VERSION
#define ODOCOE_VERSION "0.0.0"
#endif

namespace odocoe {

std::string tool_version() { return ODOCOE_VERSION; }

namespace {

Json sn_list(std::span<const SupernaturalNumber> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

SupernaturalList parse_sn_list(const Json& j) {
  SupernaturalList out;
  for (const auto& s : j) out.push_back(parse_sn(s.get<std::string>()));
  return out;
}

Json mpz_list(const std::vector<mpz_class>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

Json fact_json(const Fact& f) {
  return Json{{"statement", f.statement},
              {"status", to_string(f.status)},
              {"holds", f.holds},
              {"detail", f.detail}};
}

Json key_json(const ClassKey& key) {
  Json out = Json::array();
  for (auto p : key) out.push_back(p);
  return out;
}

Json base_certificate(const std::string& kind, Json inputs, Json decision) {
  Json cert;
  cert["format"] = kCertificateFormat;
  cert["version"] = kCertificateVersion;
  cert["tool_version"] = tool_version();
  cert["kind"] = kind;
  cert["inputs"] = std::move(inputs);
  cert["decision"] = std::move(decision);
  return cert;
}

Json seal(Json cert) {
  cert["hash"] = content_hash(cert);
  return cert;
}

// Field access that turns schema problems into ParseError.
const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("certificate is missing '") + name + "'");
  }
  return j.at(name);
}

}  // namespace

Json to_json(const CoeDecision& d) {
  Json j;
  j["equivalent"] = d.equivalent;
  j["sigma"] = d.sigma;
  Json mult = Json::array();
  for (const auto& [m, n] : d.multipliers) mult.push_back(Json::array({m.to_string(), n.to_string()}));
  j["multipliers"] = mult;
  j["obstruction"] = to_string(d.obstruction);
  j["detail"] = d.detail;
  return j;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = field(j, "rows").get<std::size_t>();
    const auto cols = field(j, "cols").get<std::size_t>();
    IntMatrix m(rows, cols);
    const Json& e = field(j, "entries");
    if (e.size() != rows) throw ParseError("matrix row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
      if (e[i].size() != cols) throw ParseError("matrix column count mismatch");
      for (std::size_t k = 0; k < cols; ++k) {
        if (m(i, k).set_str(e[i][k].get<std::string>(), 10) != 0) {
          throw ParseError("bad matrix entry");
        }
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

Json to_json(const ConjDecision& d) {
  Json j;
  j["conjugate"] = d.conjugate;
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json bj;
    bj["key"] = key_json(b.key);
    bj["I"] = b.I;
    bj["J"] = b.J;
    bj["L"] = b.L.to_string();
    bj["m"] = mpz_list(b.m);
    bj["n"] = mpz_list(b.n);
    bj["sizes_match"] = b.sizes_match;
    bj["isomorphic"] = b.isomorphic;
    if (b.sizes_match) {
      bj["m_group"] = FiniteAbelianGroup(b.m).to_string();
      bj["n_group"] = FiniteAbelianGroup(b.n).to_string();
    }
    if (b.conjugator) {
      bj["S"] = to_json(b.conjugator->S);
      bj["T"] = to_json(b.conjugator->T);
    }
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  j["failing_block"] = d.failing_block ? Json(*d.failing_block) : Json(nullptr);
  j["reason"] = d.reason;
  return j;
}

Json to_json(const KInvariant& k) {
  Json j;
  j["rank"] = k.rank;
  j["total"] = k.total.to_string();
  Json entries = Json::array();
  for (const auto& e : k.entries) {
    Json subset = Json::array();
    for (std::size_t i = 0; i < k.rank; ++i) {
      if (e.subset & (1u << i)) subset.push_back(i);
    }
    entries.push_back(
        Json{{"subset", subset}, {"product", e.product.to_string()}, {"key", key_json(e.key)}});
  }
  j["entries"] = entries;
  return j;
}

Json to_json(const CounterexampleReport& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["n"] = r.n;
  j["e_gamma"] = r.e_gamma.to_string();
  j["coe"] = fact_json(r.coe);
  j["conjugate"] = fact_json(r.conjugate);
  Json comps = Json::array();
  for (const auto& c : r.comparisons) comps.push_back(fact_json(c));
  j["comparisons"] = comps;
  Json assumed = Json::array();
  for (const auto& a : r.assumptions) assumed.push_back(fact_json(a));
  j["assumptions"] = assumed;
  j["certified"] = r.certified();
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["subject"] = r.subject();
  j["level"] = r.level();
  j["radius"] = r.radius();
  j["passed"] = r.passed();
  j["violations"] = r.violations();
  Json checks = Json::object();
  for (const auto& [name, c] : r.checks()) {
    checks[name] = Json{{"evaluated", c.evaluated}, {"failed", c.failed}, {"examples", c.examples}};
  }
  j["checks"] = checks;
  j["notes"] = r.notes();
  return j;
}

Json to_json(const PointTable& t) {
  return Json{{"source", t.source.to_string()}, {"target", t.target.to_string()},
              {"target_level", t.target_level}, {"modulus", t.modulus},
              {"values", t.values}};
}

Json to_json(const CocycleData& d) {
  return Json{{"source", d.source.to_string()}, {"target_group", d.target.moduli},
              {"level", d.level}, {"generator_moduli", d.generator_moduli},
              {"values", d.values}};
}

PointTable point_table_from_json(const Json& j) {
  try {
    PointTable t;
    t.source = parse_system_spec(field(j, "source").get<std::string>());
    t.target = parse_system_spec(field(j, "target").get<std::string>());
    t.target_level = field(j, "target_level").get<unsigned>();
    t.modulus = field(j, "modulus").get<std::vector<unsigned>>();
    t.values = field(j, "values").get<std::vector<std::int64_t>>();
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed point table: ") + e.what());
  }
}

CocycleData cocycle_data_from_json(const Json& j) {
  try {
    CocycleData d;
    d.source = parse_system_spec(field(j, "source").get<std::string>());
    d.target.moduli = field(j, "target_group").get<std::vector<std::int64_t>>();
    d.level = field(j, "level").get<unsigned>();
    d.generator_moduli = field(j, "generator_moduli").get<std::vector<unsigned>>();
    d.values = field(j, "values").get<std::vector<std::int64_t>>();
    return d;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed cocycle table: ") + e.what());
  }
}

std::string content_hash(const Json& cert) {
  Json body = cert;
  body.erase("hash");
  const std::string text = body.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json witness_to_json(const CoeWitness& w, unsigned level, unsigned radius) {
  const CoeLevels lv = coe_levels(w, level);
  return Json{{"level", level},
              {"radius", radius},
              {"source", w.source().to_string()},
              {"target", w.target().to_string()},
              {"phi", to_json(materialize(w.phi, lv.phi_target))},
              {"psi", to_json(materialize(w.psi, lv.psi_target))},
              {"a", to_json(materialize(w.a))},
              {"b", to_json(materialize(w.b))}};
}

Json witness_to_json(const ConjWitness& w, unsigned level, unsigned radius) {
  const CoeLevels lv = coe_levels(coe_from_conj(w), level);
  return Json{{"level", level},
              {"radius", radius},
              {"source", w.source().to_string()},
              {"target", w.target().to_string()},
              {"rho", to_json(w.rho)},
              {"phi", to_json(materialize(w.phi, lv.phi_target))},
              {"phi_inverse", to_json(materialize(w.phi_inverse, lv.psi_target))}};
}

// Tables that do not fit their declared shapes are malformed input.
CoeWitness coe_witness_from_json(const Json& j) {
  try {
    CoeWitness w{from_table(point_table_from_json(field(j, "phi"))),
                 from_table(cocycle_data_from_json(field(j, "a"))),
                 from_table(point_table_from_json(field(j, "psi"))),
                 from_table(cocycle_data_from_json(field(j, "b")))};
    check_shape(w);
    return w;
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

ConjWitness conj_witness_from_json(const Json& j) {
  try {
    ConjWitness w{matrix_from_json(field(j, "rho")),
                  from_table(point_table_from_json(field(j, "phi"))),
                  from_table(point_table_from_json(field(j, "phi_inverse")))};
    check_shape(w);
    return w;
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

Json coe_certificate(std::span<const SupernaturalNumber> Ms, std::span<const SupernaturalNumber> Ns,
                     const CoeDecision& d, const CoeWitness* w, unsigned level, unsigned radius) {
  Json cert = base_certificate(w ? "coe-witness" : "coe", Json{{"M", sn_list(Ms)}, {"N", sn_list(Ns)}},
                               to_json(d));
  if (w) cert["witness"] = witness_to_json(*w, level, radius);
  return seal(std::move(cert));
}

Json conj_certificate(std::span<const SupernaturalNumber> Ms, std::span<const SupernaturalNumber> Ns,
                      const ConjDecision& d, const ConjWitness* w, unsigned level, unsigned radius) {
  Json cert = base_certificate(w ? "conj-witness" : "conj",
                               Json{{"M", sn_list(Ms)}, {"N", sn_list(Ns)}}, to_json(d));
  if (w) cert["witness"] = witness_to_json(*w, level, radius);
  return seal(std::move(cert));
}

Json witness_certificate(const CoeWitness& w, unsigned level, unsigned radius) {
  Json cert = base_certificate(
      "coe-witness", Json{{"source", w.source().to_string()}, {"target", w.target().to_string()}},
      Json{{"equivalent", true}});
  cert["witness"] = witness_to_json(w, level, radius);
  return seal(std::move(cert));
}

Json counterexample_certificate(const CounterexampleReport& r) {
  return seal(base_certificate("counterexample", Json{{"p", r.p}, {"q", r.q}, {"n", r.n}}, to_json(r)));
}

namespace {

void record(CertificateCheck& out, bool ok, const std::string& what) {
  out.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  if (!ok) out.passed = false;
}

void check_coe_identities(const Json& decision, const SupernaturalList& Ms,
                          const SupernaturalList& Ns, CertificateCheck& out) {
  if (!field(decision, "equivalent").get<bool>()) return;
  const auto sigma = field(decision, "sigma").get<std::vector<std::size_t>>();
  const Json& mult = field(decision, "multipliers");
  bool ok = sigma.size() == Ms.size() && mult.size() == Ms.size() && Ms.size() == Ns.size();
  SupernaturalNumber pm;
  SupernaturalNumber pn;
  for (std::size_t i = 0; ok && i < Ms.size(); ++i) {
    if (sigma[i] >= Ns.size()) {
      ok = false;
      break;
    }
    const auto m = parse_sn(mult[i][0].get<std::string>());
    const auto n = parse_sn(mult[i][1].get<std::string>());
    ok = m.is_finite() && n.is_finite() && mul(m, Ms[i]) == mul(n, Ns[sigma[i]]);
    pm = mul(pm, Ms[i]);
    pn = mul(pn, Ns[i]);
  }
  record(out, ok && pm == pn, "m_i M_i = n N_sigma(i) and equal total products");
}

void check_conj_identities(const Json& decision, const SupernaturalList& Ms,
                           const SupernaturalList& Ns, CertificateCheck& out) {
  if (!field(decision, "conjugate").get<bool>()) return;
  bool ok = true;
  for (const auto& b : field(decision, "blocks")) {
    const auto L = parse_sn(field(b, "L").get<std::string>());
    const auto I = field(b, "I").get<std::vector<std::size_t>>();
    const auto J = field(b, "J").get<std::vector<std::size_t>>();
    const auto ms = field(b, "m").get<std::vector<std::string>>();
    const auto ns = field(b, "n").get<std::vector<std::string>>();
    if (I.size() != J.size() || ms.size() != I.size() || ns.size() != J.size()) {
      ok = false;
      continue;
    }
    std::vector<mpz_class> m;
    std::vector<mpz_class> n;
    for (std::size_t i = 0; i < I.size(); ++i) {
      m.emplace_back(ms[i]);
      n.emplace_back(ns[i]);
      ok = ok && I[i] < Ms.size() && J[i] < Ns.size() &&
           mul(SupernaturalNumber::from_natural(m.back()), L) == Ms[I[i]] &&
           mul(SupernaturalNumber::from_natural(n.back()), L) == Ns[J[i]];
    }
    const IntMatrix S = matrix_from_json(field(b, "S"));
    const IntMatrix T = matrix_from_json(field(b, "T"));
    ok = ok && S * IntMatrix::diagonal(m) * T == IntMatrix::diagonal(n) && is_unimodular(S) &&
         is_unimodular(T);
  }
  record(out, ok, "M_i = m_i L, N_j = n_j L and S diag(m) T = diag(n) with S, T unimodular");
}

}  // namespace

CertificateCheck verify_certificate(const Json& cert, std::optional<unsigned> level,
                                    std::optional<unsigned> radius) {
  CertificateCheck out;
  out.passed = true;
  try {
    if (field(cert, "format").get<std::string>() != kCertificateFormat) {
      throw ParseError("not an odocoe certificate");
    }
    if (field(cert, "version").get<int>() != kCertificateVersion) {
      throw ParseError("unsupported certificate version");
    }
    record(out, field(cert, "hash").get<std::string>() == content_hash(cert), "content hash");
    const std::string kind = field(cert, "kind").get<std::string>();
    const Json& inputs = field(cert, "inputs");
    const Json& decision = field(cert, "decision");

    if (kind == "counterexample") {
      const auto r = free_group_counterexample_check(field(inputs, "p").get<Prime>(),
                                                     field(inputs, "q").get<Prime>(),
                                                     field(inputs, "n").get<std::uint64_t>());
      record(out, to_json(r) == decision, "report reproduces");
      record(out, r.certified(), "non-conjugacy certified");
      return out;
    }

    const bool has_ms = inputs.contains("M");
    SupernaturalList Ms;
    SupernaturalList Ns;
    if (has_ms) {
      Ms = parse_sn_list(field(inputs, "M"));
      Ns = parse_sn_list(field(inputs, "N"));
    }
    if (kind == "coe" || (kind == "coe-witness" && has_ms)) {
      record(out, to_json(coe_decide(Ms, Ns)) == decision, "decision reproduces");
      check_coe_identities(decision, Ms, Ns, out);
    } else if (kind == "conj" || kind == "conj-witness") {
      record(out, to_json(conj_decide(Ms, Ns)) == decision, "decision reproduces");
      check_conj_identities(decision, Ms, Ns, out);
    } else if (kind != "coe-witness") {
      throw ParseError("unknown certificate kind '" + kind + "'");
    }

    if (cert.contains("witness")) {
      const Json& wj = cert.at("witness");
      const unsigned k = level.value_or(field(wj, "level").get<unsigned>());
      const unsigned R = radius.value_or(field(wj, "radius").get<unsigned>());
      VerificationReport rep;
      if (kind == "conj-witness") {
        ConjWitness w = conj_witness_from_json(wj);
        if (has_ms) {
          record(out, w.source() == SystemSpec::odometers(Ms) && w.target() == SystemSpec::odometers(Ns),
                 "witness spaces match the inputs");
        }
        rep = verify_conj(w, k, R);
      } else {
        CoeWitness w = coe_witness_from_json(wj);
        if (has_ms) {
          record(out, w.source() == SystemSpec::odometers(Ms) && w.target() == SystemSpec::odometers(Ns),
                 "witness spaces match the inputs");
        } else {
          record(out,
                 w.source() == parse_system_spec(field(inputs, "source").get<std::string>()) &&
                     w.target() == parse_system_spec(field(inputs, "target").get<std::string>()),
                 "witness spaces match the inputs");
        }
        rep = verify_coe(w, k, R);
      }
      record(out, rep.passed(),
             "exhaustive witness verification at level " + std::to_string(k) + ", radius " +
                 std::to_string(R));
      out.report = std::move(rep);
    } else if (kind == "coe-witness" || kind == "conj-witness") {
      throw ParseError("witness certificate without witness tables");
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  return out;
}

}  // namespace odocoe
