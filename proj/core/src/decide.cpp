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

#include "odocoe/decide.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "odocoe/dynamics.hpp"
#include "odocoe/error.hpp"

namespace odocoe {

namespace {

void require_supernatural(std::span<const SupernaturalNumber> xs, const char* side) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!xs[i].is_supernatural()) {
      throw PreconditionError(std::string(side) + "[" + std::to_string(i) + "] = " +
                              xs[i].to_string() + " has no infinite exponent");
    }
  }
}

SupernaturalNumber product_of(std::span<const SupernaturalNumber> xs) {
  SupernaturalNumber out;
  for (const auto& x : xs) out = mul(out, x);
  return out;
}

}  // namespace

std::string to_string(CoeObstruction o) {
  switch (o) {
    case CoeObstruction::None:
      return "none";
    case CoeObstruction::LengthMismatch:
      return "length mismatch";
    case CoeObstruction::TotalProductMismatch:
      return "total product mismatch";
    case CoeObstruction::ClassMultisetMismatch:
      return "class multiset mismatch";
  }
  return "unknown";
}

CoeDecision coe_decide(std::span<const SupernaturalNumber> Ms,
                       std::span<const SupernaturalNumber> Ns) {
  require_supernatural(Ms, "M");
  require_supernatural(Ns, "N");
  CoeDecision d;
  if (Ms.size() != Ns.size()) {
    d.obstruction = CoeObstruction::LengthMismatch;
    d.detail = std::to_string(Ms.size()) + " factors vs " + std::to_string(Ns.size());
    return d;
  }
  const SupernaturalNumber pm = product_of(Ms);
  const SupernaturalNumber pn = product_of(Ns);
  if (!(pm == pn)) {
    d.obstruction = CoeObstruction::TotalProductMismatch;
    d.detail = pm.to_string() + " vs " + pn.to_string();
    return d;
  }
  std::vector<bool> used(Ns.size(), false);
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const ClassKey key = class_key(Ms[i]);
    std::size_t j = 0;
    while (j < Ns.size() && (used[j] || class_key(Ns[j]) != key)) ++j;
    if (j == Ns.size()) {
      d.sigma.clear();
      d.obstruction = CoeObstruction::ClassMultisetMismatch;
      d.detail = "no partner for M[" + std::to_string(i) + "] = " + Ms[i].to_string() +
                 " with class " + to_string(key);
      return d;
    }
    used[j] = true;
    d.sigma.push_back(j);
    d.multipliers.push_back(sim_witness(Ms[i], Ns[j]));
  }
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const auto& [m, n] = d.multipliers[i];
    if (!(mul(m, Ms[i]) == mul(n, Ns[d.sigma[i]]))) {
      throw VerificationError("multiplier certificate failed for factor " + std::to_string(i));
    }
  }
  d.equivalent = true;
  return d;
}

SupernaturalNumber canonical_block_part(std::span<const SupernaturalNumber> members) {
  if (members.empty()) return {};
  std::set<Prime> primes;
  for (const auto& x : members) {
    for (const auto& [p, e] : x.factors()) primes.insert(p);
  }
  SupernaturalNumber L;
  for (Prime p : primes) {
    const Exponent e = members.front().exponent(p);
    bool agree = true;
    for (const auto& x : members) agree = agree && x.exponent(p) == e;
    if (agree) L = mul(L, SupernaturalNumber::prime_power(p, e));
  }
  return L;
}

ConjDecision conj_decide(std::span<const SupernaturalNumber> Ms,
                         std::span<const SupernaturalNumber> Ns) {
  require_supernatural(Ms, "M");
  require_supernatural(Ns, "N");
  std::map<ClassKey, ConjBlock> classes;
  for (std::size_t i = 0; i < Ms.size(); ++i) classes[class_key(Ms[i])].I.push_back(i);
  for (std::size_t j = 0; j < Ns.size(); ++j) classes[class_key(Ns[j])].J.push_back(j);

  ConjDecision d;
  for (auto& [key, block] : classes) {
    block.key = key;
    SupernaturalList members;
    for (auto i : block.I) members.push_back(Ms[i]);
    for (auto j : block.J) members.push_back(Ns[j]);
    block.L = canonical_block_part(members);
    auto finite_part = [&](const SupernaturalNumber& x) {
      SupernaturalNumber f;
      for (const auto& [p, e] : x.factors()) {
        if (e.is_infinite()) continue;
        const Exponent l = block.L.exponent(p);
        if (l.is_zero()) f = mul(f, SupernaturalNumber::prime_power(p, e));
      }
      if (!(mul(f, block.L) == x) || !gcd(f, block.L).is_one()) {
        throw VerificationError("block decomposition failed for " + x.to_string());
      }
      return f.to_natural();
    };
    for (auto i : block.I) block.m.push_back(finite_part(Ms[i]));
    for (auto j : block.J) block.n.push_back(finite_part(Ns[j]));
    block.sizes_match = block.I.size() == block.J.size();
    if (block.sizes_match) {
      block.isomorphic = fab_isomorphic(FiniteAbelianGroup(block.m), FiniteAbelianGroup(block.n));
      if (block.isomorphic) block.conjugator = solve_conjugator(block.m, block.n);
    }
    d.blocks.push_back(std::move(block));
  }
  d.conjugate = true;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const ConjBlock& blk = d.blocks[b];
    if (blk.sizes_match && blk.isomorphic) continue;
    d.conjugate = false;
    d.failing_block = b;
    if (!blk.sizes_match) {
      d.reason = "class " + to_string(blk.key) + " has " + std::to_string(blk.I.size()) +
                 " factors on the left and " + std::to_string(blk.J.size()) + " on the right";
    } else {
      d.reason = "class " + to_string(blk.key) + ": " + FiniteAbelianGroup(blk.m).to_string() +
                 " is not isomorphic to " + FiniteAbelianGroup(blk.n).to_string();
    }
    break;
  }
  return d;
}

KInvariant k_invariant(std::span<const SupernaturalNumber> Ms) {
  require_supernatural(Ms, "M");
  if (Ms.size() > 20) throw PreconditionError("subset invariant limited to 20 factors");
  KInvariant k;
  k.rank = Ms.size();
  const std::uint32_t count = std::uint32_t{1} << Ms.size();
  for (std::uint32_t s = 0; s < count; ++s) {
    KEntry e;
    e.subset = s;
    for (std::size_t i = 0; i < Ms.size(); ++i) {
      if (s & (std::uint32_t{1} << i)) e.product = mul(e.product, Ms[i]);
    }
    e.key = class_key(e.product);
    k.entries.push_back(std::move(e));
  }
  k.total = k.entries.back().product;
  return k;
}

bool k_invariant_equal(const KInvariant& a, const KInvariant& b) {
  if (a.rank != b.rank || !(a.total == b.total)) return false;
  std::vector<ClassKey> ka;
  std::vector<ClassKey> kb;
  for (const auto& e : a.entries) ka.push_back(e.key);
  for (const auto& e : b.entries) kb.push_back(e.key);
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw PreconditionError("denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::to_string() const {
  return num == 0 ? "0" : std::to_string(num) + "/" + std::to_string(den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

bool TGroup::contains(const Rational& r) const {
  return divides(SupernaturalNumber::from_natural(static_cast<std::uint64_t>(r.den)), A_);
}

TGroup eig_group(const SupernaturalNumber& M, std::int64_t k) {
  if (!M.is_supernatural()) throw PreconditionError(M.to_string() + " is not supernatural");
  if (k == 0) return TGroup();
  const std::uint64_t a = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  const SupernaturalNumber g = gcd(SupernaturalNumber::from_natural(a), M);
  return TGroup(div_exact(M, g));
}

std::set<Rational> eig_group_oracle(const SupernaturalNumber& M, std::int64_t k, unsigned level) {
  const std::int64_t m = Factor::odometer(M).level_modulus(level);
  if (m > kOracleModulusGuard) {
    throw PreconditionError("level modulus " + std::to_string(m) + " above the oracle guard");
  }
  // translation by k on Z/m has the characters t -> exp(2 pi i s t / m) as
  // eigenvectors with eigenvalue s k / m
  std::set<Rational> out;
  const std::int64_t kr = ((k % m) + m) % m;
  for (std::int64_t s = 0; s < m; ++s) out.insert(Rational::reduced(s * kr, m));
  return out;
}

SupernaturalNumber eig_level_index(const SupernaturalNumber& M, std::int64_t k, unsigned level) {
  const std::int64_t m = Factor::odometer(M).level_modulus(level);
  const std::int64_t g = std::gcd(k < 0 ? -k : k, m);
  return SupernaturalNumber::from_natural(static_cast<std::uint64_t>(m / g));
}

std::set<Rational> finite_tgroup_elements(const SupernaturalNumber& D) {
  const std::int64_t d = D.to_int64();
  if (d > kOracleModulusGuard) throw PreconditionError("T(D) too large to enumerate");
  std::set<Rational> out;
  for (std::int64_t s = 0; s < d; ++s) out.insert(Rational::reduced(s, d));
  return out;
}

bool tgroup_subset(const TGroup& a, const TGroup& b) { return divides(a.index(), b.index()); }

TGroup tgroup_product(const TGroup& a, const TGroup& b) {
  return TGroup(lcm(a.index(), b.index()));
}

std::string to_string(FactStatus s) {
  switch (s) {
    case FactStatus::Cited:
      return "cited";
    case FactStatus::Certified:
      return "certified";
    case FactStatus::Assumed:
      return "assumed";
  }
  return "unknown";
}

bool CounterexampleReport::certified() const {
  for (const auto& c : comparisons) {
    if (!c.holds) return false;
  }
  return conjugate.holds;
}

CounterexampleReport free_group_counterexample_check(Prime p, Prime q, std::uint64_t n) {
  if (!is_prime(p) || !is_prime(q)) throw PreconditionError("p and q must be prime");
  if (p == q) throw PreconditionError("p and q must differ");
  if (n <= 1) throw PreconditionError("n must exceed 1");
  if (n % p == 0 || std::gcd(static_cast<std::uint64_t>(q), n) != 1) {
    throw PreconditionError("n must be coprime to p and q");
  }
  const SupernaturalNumber pinf = SupernaturalNumber::prime_power(p, Exponent::infinity());
  const SupernaturalNumber qinf = SupernaturalNumber::prime_power(q, Exponent::infinity());
  const SupernaturalNumber nn = SupernaturalNumber::from_natural(n);
  const SupernaturalNumber M1 = mul(nn, pinf);  // n p^inf
  const SupernaturalNumber N2 = mul(nn, qinf);  // n q^inf
  const TGroup trivial;
  const TGroup tp(pinf);
  const TGroup tq(qinf);

  CounterexampleReport r;
  r.p = p;
  r.q = q;
  r.n = n;
  r.e_gamma = eig_group(M1, 1);

  r.coe = Fact{"gamma and delta are continuously orbit equivalent", FactStatus::Cited, true,
               "follows from the odometer-product equivalence of (" + M1.to_string() + ", " +
                   qinf.to_string() + ") and (" + pinf.to_string() + ", " + N2.to_string() +
                   "); not re-derived here"};
  r.assumptions.push_back(
      Fact{"E(beta_g x alpha) = E(alpha) for the boundary action beta", FactStatus::Assumed, true,
           "boundary-action eigenvalue lemma, taken as given"});
  r.assumptions.push_back(Fact{"E(alpha x alpha') contains E(alpha')", FactStatus::Assumed, true,
                               "eigenfunctions of one factor pull back to the product"});

  constexpr std::int64_t kSample = 12;
  // l = 0: E(delta_g) = E(alpha_{p^inf}^k), one of T(1), T(p^inf)
  {
    bool values_ok = true;
    for (std::int64_t k = -kSample; k <= kSample; ++k) {
      const TGroup e = eig_group(pinf, k);
      values_ok = values_ok && (e == trivial || e == tp);
    }
    const bool ne1 = !(r.e_gamma == trivial);
    r.comparisons.push_back(Fact{r.e_gamma.to_string() + " != T(1)", FactStatus::Certified,
                                 ne1 && values_ok,
                                 "case l = 0; E(alpha_{p^inf}^k) in {T(1), T(p^inf)} for |k| <= " +
                                     std::to_string(kSample)});
    const bool nep = !(r.e_gamma == tp);
    r.comparisons.push_back(Fact{r.e_gamma.to_string() + " != " + tp.to_string(),
                                 FactStatus::Certified, nep && values_ok,
                                 "case l = 0; the factor " + nn.to_string() +
                                     " of the index is absent from T(p^inf)"});
  }
  // l != 0: T(q^inf) = E(alpha_{q^inf}^l) inside E(alpha_{n q^inf}^l) inside E(delta_g)
  {
    bool chain_ok = true;
    for (std::int64_t l = -kSample; l <= kSample && chain_ok; ++l) {
      if (l == 0) continue;
      chain_ok = eig_group(qinf, l) == tq && tgroup_subset(tq, eig_group(N2, l));
      for (std::int64_t k = -kSample; k <= kSample && chain_ok; ++k) {
        chain_ok = tgroup_subset(tq, tgroup_product(eig_group(pinf, k), eig_group(N2, l)));
      }
    }
    const bool excluded = !tgroup_subset(tq, r.e_gamma);
    r.comparisons.push_back(Fact{r.e_gamma.to_string() + " does not contain " + tq.to_string(),
                                 FactStatus::Certified, excluded && chain_ok,
                                 "case l != 0; T(q^inf) lies in E(delta_g) for |k|, |l| <= " +
                                     std::to_string(kSample)});
  }
  bool all = true;
  for (const auto& c : r.comparisons) all = all && c.holds;
  r.conjugate = Fact{"gamma and delta are not conjugate", FactStatus::Certified, all,
                     "no image of the generator a can carry eigenvalue group " +
                         r.e_gamma.to_string()};
  return r;
}

}  // namespace odocoe
