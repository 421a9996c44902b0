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

// odocoe: decide orbit equivalence and conjugacy of odometer products,
// emit and re-verify certificates.
//
// Exit codes: 0 positive or passed, 1 negative or failed, 2 usage or
// malformed input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "odocoe/certificate.hpp"
#include "odocoe/decide.hpp"
#include "odocoe/error.hpp"
#include "odocoe/witness.hpp"

using namespace odocoe;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Options {
  bool witness = false;
  bool json = false;
  unsigned level = kDefaultLevel;
  unsigned radius = kDefaultRadius;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t count = 100;
};

// "5*2^inf,3^inf" or "odo:5*2^inf,odo:3^inf"
SupernaturalList parse_list(const std::string& text) {
  SupernaturalList out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty factor in '" + text + "'");
    item = item.substr(b, e - b + 1);
    if (item.rfind("odo:", 0) == 0) item = item.substr(4);
    const SupernaturalNumber m = parse_sn(item);
    if (!m.is_supernatural()) throw ParseError("'" + item + "' is not supernatural");
    out.push_back(m);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::string join(const SupernaturalList& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ",") + x.to_string();
  return s;
}

// Certificate to --out and, with --json, to stdout.
void emit(const Options& o, const Json& cert) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << cert.dump(2) << '\n';
  }
  if (o.json) std::cout << cert.dump(2) << '\n';
}

// Human-readable lines go to stdout unless --json claims it.
std::ostream& human(const Options& o) {
  static std::ostringstream sink;
  return o.json ? static_cast<std::ostream&>(sink) : std::cout;
}

void print_report(const Options& o, const VerificationReport& rep) {
  human(o) << rep.summary() << '\n';
}

int cmd_coe(const Options& o, const std::string& ms, const std::string& ns) {
  const auto M = parse_list(ms);
  const auto N = parse_list(ns);
  const auto d = coe_decide(M, N);
  auto& out = human(o);
  if (d.equivalent) {
    out << "orbit equivalent\n";
    for (std::size_t i = 0; i < M.size(); ++i) {
      out << "  " << d.multipliers[i].first.to_string() << " * " << M[i].to_string() << " = "
          << d.multipliers[i].second.to_string() << " * " << N[d.sigma[i]].to_string() << '\n';
    }
  } else {
    out << "not orbit equivalent: " << to_string(d.obstruction) << ": " << d.detail << '\n';
  }
  if (d.equivalent && o.witness) {
    const auto w = build_coe_witness(M, N, d);
    const Json cert = coe_certificate(M, N, d, &w, o.level, o.radius);
    out << "witness embedded at level " << o.level << ", radius " << o.radius << '\n';
    emit(o, cert);
  } else {
    emit(o, coe_certificate(M, N, d));
  }
  return d.equivalent ? kPositive : kNegative;
}

int cmd_conj(const Options& o, const std::string& ms, const std::string& ns) {
  const auto M = parse_list(ms);
  const auto N = parse_list(ns);
  const auto d = conj_decide(M, N);
  auto& out = human(o);
  out << (d.conjugate ? "conjugate\n" : "not conjugate: " + d.reason + "\n");
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    out << "  class " << to_string(blk.key) << ": L = " << blk.L.to_string() << ", m =";
    for (const auto& x : blk.m) out << ' ' << x.get_str();
    out << ", n =";
    for (const auto& x : blk.n) out << ' ' << x.get_str();
    out << (d.failing_block && *d.failing_block == b ? "  <- fails" : "") << '\n';
  }
  if (d.conjugate && o.witness) {
    const auto w = build_conj_witness(M, N, d);
    out << "rho = " << w.rho.to_string() << '\n';
    emit(o, conj_certificate(M, N, d, &w, o.level, o.radius));
  } else {
    emit(o, conj_certificate(M, N, d));
  }
  return d.conjugate ? kPositive : kNegative;
}

int cmd_kinv(const Options& o, const std::string& ms) {
  const auto M = parse_list(ms);
  const auto k = k_invariant(M);
  auto& out = human(o);
  out << "rank " << k.rank << ", total " << k.total.to_string() << '\n';
  for (const auto& e : k.entries) {
    std::string subset;
    for (std::size_t i = 0; i < k.rank; ++i) {
      if (e.subset >> i & 1u) subset += (subset.empty() ? "" : ",") + std::to_string(i + 1);
    }
    out << "  {" << subset << "}: Z[1/" << e.product.to_string() << "], class " << to_string(e.key) << '\n';
  }
  emit(o, to_json(k));
  return kPositive;
}

int cmd_eig(const Options& o, const std::string& m, std::int64_t k, bool with_level) {
  const SupernaturalNumber M = parse_sn(m);
  if (!M.is_supernatural()) throw ParseError("'" + m + "' is not supernatural");
  const TGroup E = eig_group(M, k);
  auto& out = human(o);
  out << "E(alpha^" << k << ") = " << E.to_string() << '\n';
  Json j{{"M", M.to_string()}, {"k", k}, {"group", E.index().to_string()}};
  if (with_level) {
    const SupernaturalNumber D = eig_level_index(M, k, o.level);
    out << "level " << o.level << ": T(" << D.to_string() << ")";
    j["level"] = o.level;
    j["level_index"] = D.to_string();
    if (D.to_int64() <= kOracleModulusGuard) {
      Json elems = Json::array();
      out << " =";
      for (const auto& r : finite_tgroup_elements(D)) {
        out << ' ' << r.to_string();
        elems.push_back(r.to_string());
      }
      j["elements"] = elems;
    }
    out << '\n';
  }
  emit(o, j);
  return kPositive;
}

int cmd_counterexample(const Options& o, std::uint64_t p, std::uint64_t q, std::uint64_t n) {
  const auto r = free_group_counterexample_check(p, q, n);
  auto& out = human(o);
  auto fact = [&](const Fact& f) {
    out << "  [" << to_string(f.status) << "] " << f.statement << ": " << (f.holds ? "holds" : "FAILS");
    if (!f.detail.empty()) out << " (" << f.detail << ")";
    out << '\n';
  };
  out << "eigenvalue group of the odometer generator: " << r.e_gamma.to_string() << '\n';
  fact(r.coe);
  for (const auto& f : r.comparisons) fact(f);
  for (const auto& f : r.assumptions) fact(f);
  fact(r.conjugate);
  out << (r.certified() ? "non-conjugacy certified\n" : "not certified\n");
  emit(o, counterexample_certificate(r));
  return r.certified() ? kPositive : kNegative;
}

int cmd_witness(const Options& o, const std::string& ms, const std::string& ns) {
  const auto M = parse_list(ms);
  const auto N = parse_list(ns);
  const auto d = coe_decide(M, N);
  if (!d.equivalent) {
    human(o) << "no witness: " << to_string(d.obstruction) << ": " << d.detail << '\n';
    return kNegative;
  }
  const auto w = build_coe_witness(M, N, d);
  const auto rep = verify_coe(w, o.level, o.radius);
  print_report(o, rep);
  emit(o, witness_certificate(w, o.level, o.radius));
  return rep.passed() ? kPositive : kNegative;
}

int cmd_verify(const Options& o, const std::string& file, bool level_set, bool radius_set) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read " + file);
  Json cert;
  try {
    cert = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("not JSON: ") + e.what());
  }
  const auto check = verify_certificate(cert, level_set ? std::optional<unsigned>(o.level) : std::nullopt,
                                        radius_set ? std::optional<unsigned>(o.radius) : std::nullopt);
  auto& out = human(o);
  for (const auto& line : check.lines) out << line << '\n';
  if (check.report) print_report(o, *check.report);
  out << (check.passed ? "PASS\n" : "FAIL\n");
  Json j{{"passed", check.passed}, {"lines", check.lines}};
  if (check.report) j["report"] = to_json(*check.report);
  if (o.json) std::cout << j.dump(2) << '\n';
  return check.passed ? kPositive : kNegative;
}

// Seeded random instances: the K-invariant agrees with the COE decision,
// every certificate re-verifies, and small witnesses pass at (level, radius).
int cmd_selftest(const Options& o) {
  std::mt19937_64 rng(o.seed);
  const std::uint64_t primes[] = {2, 3, 5, 7};
  auto factor = [&] {
    SupernaturalNumber m;
    for (auto p : primes) {
      const int e = static_cast<int>(rng() % 4);
      if (e == 3) m = mul(m, SupernaturalNumber::prime_power(p, Exponent::infinity()));
      else m = mul(m, SupernaturalNumber::prime_power(p, Exponent(e % 2)));
    }
    if (!m.is_supernatural()) m = mul(m, SupernaturalNumber::prime_power(primes[rng() % 4], Exponent::infinity()));
    return m;
  };
  std::size_t failures = 0, positive = 0, witnesses = 0;
  auto& out = human(o);
  for (std::size_t i = 0; i < o.count; ++i) {
    const std::size_t r = 1 + rng() % 2;
    SupernaturalList M, N;
    for (std::size_t j = 0; j < r; ++j) M.push_back(factor());
    if (rng() % 2) {
      N = M;
      std::shuffle(N.begin(), N.end(), rng);
    } else {
      for (std::size_t j = 0; j < r; ++j) N.push_back(factor());
    }
    const auto d = coe_decide(M, N);
    const auto c = conj_decide(M, N);
    bool ok = k_invariant_equal(k_invariant(M), k_invariant(N)) == d.equivalent;
    ok = ok && (!c.conjugate || d.equivalent);
    ok = ok && verify_certificate(coe_certificate(M, N, d)).passed;
    ok = ok && verify_certificate(conj_certificate(M, N, c)).passed;
    positive += d.equivalent;
    if (ok && d.equivalent && r == 1) {
      ok = verify_coe(build_coe_witness(M, N, d), o.level, o.radius).passed();
      ++witnesses;
    }
    if (!ok) {
      ++failures;
      out << "FAIL: (" << join(M) << ") vs (" << join(N) << ")\n";
    }
  }
  out << o.count << " instances, " << positive << " equivalent, " << witnesses << " witnesses verified, "
      << failures << " failures\n";
  return failures == 0 ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit equivalence and conjugacy of odometer products"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Options o;

  std::string ms, ns, m, file;
  std::int64_t k = 0;
  std::uint64_t p = 0, q = 0, n = 0;

  auto common = [&](CLI::App* c, bool witness) {
    if (witness) c->add_flag("--witness", o.witness, "build and embed a materialized witness");
    c->add_option("--level", o.level, "materialization and verification level")->check(CLI::Range(0u, 12u));
    c->add_option("--radius", o.radius, "group box radius")->check(CLI::Range(0u, 64u));
    c->add_option("--out", o.out, "write the certificate to this file");
    c->add_flag("--json", o.json, "print machine-readable output only");
  };

  auto* coe = app.add_subcommand("coe", "decide continuous orbit equivalence");
  coe->add_option("M", ms, "comma-separated supernatural numbers")->required();
  coe->add_option("N", ns, "comma-separated supernatural numbers")->required();
  common(coe, true);

  auto* conj = app.add_subcommand("conj", "decide conjugacy");
  conj->add_option("M", ms)->required();
  conj->add_option("N", ns)->required();
  common(conj, true);

  auto* kinv = app.add_subcommand("kinv", "subset-product invariant");
  kinv->add_option("M", ms)->required();
  common(kinv, false);

  auto* eig = app.add_subcommand("eig", "eigenvalue group of the k-th power");
  eig->add_option("M", m)->required();
  eig->add_option("k", k)->required();
  common(eig, false);

  auto* cex = app.add_subcommand("counterexample", "orbit equivalent but not conjugate");
  cex->add_option("p", p)->required();
  cex->add_option("q", q)->required();
  cex->add_option("n", n)->required();
  common(cex, false);

  auto* wit = app.add_subcommand("witness", "build, verify and emit an orbit equivalence witness");
  wit->add_option("M", ms)->required();
  wit->add_option("N", ns)->required();
  common(wit, false);

  auto* ver = app.add_subcommand("verify", "re-check a certificate");
  ver->add_option("file", file)->required();
  common(ver, false);

  auto* self = app.add_subcommand("selftest", "randomized consistency checks");
  self->add_option("--seed", o.seed, "random seed");
  self->add_option("--count", o.count, "number of instances");
  common(self, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*coe) return cmd_coe(o, ms, ns);
    if (*conj) return cmd_conj(o, ms, ns);
    if (*kinv) return cmd_kinv(o, ms);
    if (*eig) return cmd_eig(o, m, k, eig->count("--level") > 0);
    if (*cex) return cmd_counterexample(o, p, q, n);
    if (*wit) return cmd_witness(o, ms, ns);
    if (*ver) return cmd_verify(o, file, ver->count("--level") > 0, ver->count("--radius") > 0);
    if (*self) return cmd_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}
