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

#include "odocoe/witness.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "odocoe/error.hpp"

namespace odocoe {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > (static_cast<__int128>(1) << 62)) throw std::overflow_error("modulus exceeds 2^62");
  return static_cast<std::int64_t>(p);
}

void self_verify(const CoeWitness& w, const char* what) {
  VerificationReport rep = verify_coe(w, kDefaultLevel, kDefaultRadius);
  if (!rep.passed()) throw VerificationError(std::string(what) + " failed:\n" + rep.summary());
}

void self_verify(const ConjWitness& w, const char* what) {
  VerificationReport rep = verify_conj(w, kDefaultLevel, kDefaultRadius);
  if (!rep.passed()) throw VerificationError(std::string(what) + " failed:\n" + rep.summary());
}

// a^{-1} mod n for gcd(a, n) = 1
std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t r0 = n, r1 = floor_mod(a, n);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 != 1) throw PreconditionError("no inverse mod " + std::to_string(n));
  return floor_mod(t0, n);
}

// x = u mod a, x = v mod b for coprime a, b
std::int64_t crt(std::int64_t u, std::int64_t a, std::int64_t v, std::int64_t b) {
  const std::int64_t ab = checked_mul(a, b);
  const __int128 t = static_cast<__int128>(floor_mod(v - u, b)) * inverse_mod(a, b) % b;
  return static_cast<std::int64_t>((u + static_cast<__int128>(a) * t) % ab);
}

}  // namespace

std::pair<std::int64_t, std::int64_t> carry_split(std::int64_t l, std::int64_t g, std::int64_t c) {
  const std::int64_t j = floor_mod(g, l);
  const std::int64_t h = g - j;
  return c + j <= l - 1 ? std::pair{j, h} : std::pair{j, h + l};
}

CoeWitness build_basic_coe(std::int64_t l, const SupernaturalNumber& L) {
  if (l < 1) throw PreconditionError("l must be at least 1");
  if (!L.is_supernatural()) throw PreconditionError(L.to_string() + " is not supernatural");
  const SupernaturalNumber lL = mul(SupernaturalNumber::from_natural(static_cast<std::uint64_t>(l)), L);
  if (l == 1) return identity_coe(SystemSpec({Factor::odometer(L)}));

  const SystemSpec X({Factor::odometer(lL)});
  const SystemSpec Y({Factor::cyclic(l), Factor::odometer(L)});
  const Factor fX = X.factor(0);
  const Factor fL = Y.factor(1);

  // x -> (x mod l, (x - x mod l) / l)
  PointMap phi(
      X, Y,
      [fX, fL, l](unsigned k) { return min_level_for(fX, checked_mul(l, fL.level_modulus(k))); },
      [fL, l](unsigned k, const PointAtLevel& x) {
        const std::int64_t mL = fL.level_modulus(k);
        const std::int64_t r = x.residues[0] % checked_mul(l, mL);
        const std::int64_t c = r % l;
        return PointAtLevel{k, {c, (r - c) / l}};
      });
  // (c, y) -> c + l y
  PointMap psi(
      Y, X,
      [fX, fL, l](unsigned k) {
        const std::int64_t m = fX.level_modulus(k);
        return min_level_for(fL, m / std::gcd(l, m));
      },
      [fX, l](unsigned k, const PointAtLevel& y) {
        const std::int64_t m = fX.level_modulus(k);
        const std::int64_t d = m / std::gcd(l, m);
        const __int128 v = y.residues[0] + static_cast<__int128>(l) * (y.residues[1] % d);
        return PointAtLevel{k, {static_cast<std::int64_t>(v % m)}};
      });

  const GroupDescriptor H = Y.acting_group();  // Z/l x Z, the second factor read as lZ / l
  const GroupDescriptor G = X.acting_group();
  GroupMap a1(X, H, min_level_for(fX, l), [l](const PointAtLevel& x) {
    const auto [j, h] = carry_split(l, 1, x.residues[0] % l);
    return GroupElement{j, h / l};
  });
  GroupMap b1(Y, G, 0, [l](const PointAtLevel& y) {
    return GroupElement{y.residues[0] < l - 1 ? 1 : 1 - l};
  });
  GroupMap b2 = GroupMap::constant(Y, G, {l});

  CoeWitness w{phi, CocycleTable(X, H, {a1}), psi, CocycleTable(Y, G, {b1, b2})};
  self_verify(w, "basic splitting witness");
  return w;
}

CoeWitness build_finite_coe(std::span<const std::int64_t> ns, std::span<const std::int64_t> target) {
  if (ns.empty() || target.empty()) throw PreconditionError("finite systems need a factor");
  __int128 pa = 1;
  __int128 pb = 1;
  std::vector<Factor> fa;
  std::vector<Factor> fb;
  for (auto n : ns) {
    pa *= n;
    fa.push_back(Factor::cyclic(n));
  }
  for (auto n : target) {
    pb *= n;
    fb.push_back(Factor::cyclic(n));
  }
  if (pa != pb) throw PreconditionError("finite systems have different orders");
  const SystemSpec X(std::move(fa));
  const SystemSpec Y(std::move(fb));
  if (X == Y) return identity_coe(X);

  auto make_map = [](const SystemSpec& from, const SystemSpec& to) {
    auto in = std::make_shared<const LevelIndex>(from, 0);
    auto out = std::make_shared<const LevelIndex>(to, 0);
    return PointMap(
        from, to, [](unsigned) { return 0u; },
        [in, out](unsigned k, const PointAtLevel& x) {
          PointAtLevel y = out->point(in->index_of(x.residues));
          y.level = k;
          return y;
        });
  };
  auto differences = [](const PointMap& f) {
    const SystemSpec from = f.source();
    const GroupDescriptor H = f.target().acting_group();
    std::vector<GroupMap> gens;
    for (std::size_t i = 0; i < from.size(); ++i) {
      gens.emplace_back(from, H, 0, [f, from, H, i](const PointAtLevel& x) {
        GroupElement e(from.size(), 0);
        e[i] = 1;
        const PointAtLevel y1 = f(0, act(from, e, x));
        const PointAtLevel y0 = f(0, x);
        return H.sub(y1.residues, y0.residues);
      });
    }
    return CocycleTable(from, H, std::move(gens));
  };
  PointMap phi = make_map(X, Y);
  PointMap psi = make_map(Y, X);
  CoeWitness w{phi, differences(phi), psi, differences(psi)};
  self_verify(w, "finite witness");
  return w;
}

namespace {

struct BlockMap {
  std::vector<std::size_t> src;  // source factor indices
  std::vector<std::size_t> tgt;  // target factor indices
  std::vector<std::int64_t> S;   // |tgt| x |src|
  std::vector<std::int64_t> src_finite;
  std::vector<std::int64_t> tgt_finite;
  Factor L = Factor::cyclic(1);
};

// y_t = S (x mod m) mod n and y_L = S (x mod L_k) mod L_k, glued by CRT.
PointMap block_linear_map(const SystemSpec& X, const SystemSpec& Y, std::vector<BlockMap> blocks) {
  auto data = std::make_shared<const std::vector<BlockMap>>(std::move(blocks));
  return PointMap(
      X, Y,
      [X, data](unsigned k) {
        unsigned s = 0;
        for (const auto& b : *data) {
          const std::int64_t mL = b.L.level_modulus(k);
          for (std::size_t i = 0; i < b.src.size(); ++i) {
            s = std::max(s, min_level_for(X.factor(b.src[i]), checked_mul(b.src_finite[i], mL)));
          }
        }
        return s;
      },
      [Y, data](unsigned k, const PointAtLevel& x) {
        PointAtLevel y{k, std::vector<std::int64_t>(Y.size(), 0)};
        for (const auto& b : *data) {
          const std::int64_t mL = b.L.level_modulus(k);
          const std::size_t r = b.src.size();
          for (std::size_t a = 0; a < b.tgt.size(); ++a) {
            const std::int64_t nk = Y.factor(b.tgt[a]).level_modulus(k);
            const std::int64_t nt = nk / mL;
            __int128 yt = 0;
            __int128 yl = 0;
            for (std::size_t c = 0; c < r; ++c) {
              const std::int64_t s = b.S[a * r + c];
              if (s == 0) continue;
              const std::int64_t xi = x.residues[b.src[c]];
              yt = (yt + static_cast<__int128>(s) * (xi % b.src_finite[c])) % nt;
              yl = (yl + static_cast<__int128>(s) * (xi % mL)) % mL;
            }
            y.residues[b.tgt[a]] = crt(floor_mod(static_cast<std::int64_t>(yt), nt), nt,
                                       floor_mod(static_cast<std::int64_t>(yl), mL), mL);
          }
        }
        return y;
      });
}

std::vector<std::int64_t> to_int64(const IntMatrix& m) {
  std::vector<std::int64_t> out;
  for (const auto& v : m.entries()) {
    if (!v.fits_slong_p()) throw std::overflow_error("conjugator entry too large");
    out.push_back(v.get_si());
  }
  return out;
}

std::vector<std::int64_t> to_int64(const std::vector<mpz_class>& xs) {
  std::vector<std::int64_t> out;
  for (const auto& v : xs) {
    if (!v.fits_slong_p()) throw std::overflow_error("finite part too large");
    out.push_back(v.get_si());
  }
  return out;
}

}  // namespace

ConjWitness build_conj_witness(std::span<const SupernaturalNumber> Ms,
                               std::span<const SupernaturalNumber> Ns, const ConjDecision& d) {
  if (!d.conjugate) throw PreconditionError("decision is not positive");
  if (Ms.size() != Ns.size()) throw PreconditionError("conjugate systems have equal rank");
  const SystemSpec X = SystemSpec::odometers(Ms);
  const SystemSpec Y = SystemSpec::odometers(Ns);
  const std::size_t r = Ms.size();
  IntMatrix rho(r, r);
  std::vector<BlockMap> fwd;
  std::vector<BlockMap> bwd;
  for (const auto& blk : d.blocks) {
    if (!blk.conjugator) throw PreconditionError("block without conjugator");
    const IntMatrix& S = blk.conjugator->S;
    const IntMatrix Sinv = invert_unimodular(S);
    for (std::size_t a = 0; a < blk.J.size(); ++a) {
      for (std::size_t c = 0; c < blk.I.size(); ++c) rho(blk.J[a], blk.I[c]) = S(a, c);
    }
    const Factor L = Factor::odometer(blk.L);
    const auto m = to_int64(blk.m);
    const auto n = to_int64(blk.n);
    fwd.push_back(BlockMap{blk.I, blk.J, to_int64(S), m, n, L});
    bwd.push_back(BlockMap{blk.J, blk.I, to_int64(Sinv), n, m, L});
  }
  ConjWitness w{rho, block_linear_map(X, Y, std::move(fwd)), block_linear_map(Y, X, std::move(bwd))};
  self_verify(w, "conjugacy witness");
  return w;
}

namespace {

// Accumulates a chain of witnesses left to right.
class Chain {
 public:
  void then(const CoeWitness& w) { acc_ = acc_ ? compose_coe(*acc_, w) : w; }
  bool empty() const { return !acc_.has_value(); }
  CoeWitness finish(const SystemSpec& spec) const { return acc_ ? *acc_ : identity_coe(spec); }

 private:
  std::optional<CoeWitness> acc_;
};

CoeWitness product_all(const std::vector<CoeWitness>& parts) {
  CoeWitness out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) out = product_coe(out, parts[i]);
  return out;
}

// finite part of a beyond b: prod over primes with finite v_p(a) of
// p^{max(0, v_p(a) - v_p(b))}
std::int64_t excess(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  SupernaturalNumber out;
  for (const auto& [p, e] : a.factors()) {
    if (e.is_infinite()) continue;
    const Exponent f = b.exponent(p);
    if (f < e) {
      out = mul(out, SupernaturalNumber::prime_power(p, Exponent(mpz_class(e.value() - f.value()))));
    }
  }
  return out.to_int64();
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

// Witness from prod alpha_{Ms[p]} to Z = (lambda_{n'}, alpha_{L_0}, ...,
// alpha_{L_{r-1}}), where Ms[p] = ls[p] * Ls[slot[p]].
CoeWitness to_canonical(std::span<const SupernaturalNumber> Ms, const std::vector<std::int64_t>& ls,
                        const SupernaturalList& Ls, const std::vector<std::size_t>& slot,
                        std::int64_t& n_prime) {
  const std::size_t r = Ms.size();
  Chain chain;
  // split off the cyclic part of every factor
  std::vector<CoeWitness> parts;
  bool any_cyclic = false;
  for (std::size_t p = 0; p < r; ++p) {
    if (ls[p] > 1) {
      parts.push_back(build_basic_coe(ls[p], Ls[slot[p]]));
      any_cyclic = true;
    } else {
      parts.push_back(identity_coe(SystemSpec({Factor::odometer(Ms[p])})));
    }
  }
  const SystemSpec X = SystemSpec::odometers(Ms);
  SystemSpec S1 = X;
  if (any_cyclic) {
    CoeWitness split = product_all(parts);
    S1 = split.target();
    chain.then(split);
  }

  // cyclic factors first, odometers by slot
  std::vector<std::size_t> perm;
  std::vector<std::int64_t> cs;
  std::vector<std::size_t> odo_pos(r);
  for (std::size_t p = 0, pos = 0; p < r; ++p) {
    if (ls[p] > 1) {
      perm.push_back(pos++);
      cs.push_back(ls[p]);
    }
    odo_pos[slot[p]] = pos++;
  }
  for (std::size_t i = 0; i < r; ++i) perm.push_back(odo_pos[i]);
  if (!is_identity(perm)) chain.then(permutation_coe(S1, perm));

  n_prime = 1;
  if (cs.empty()) return chain.finish(X);

  // merge the cyclic part; primes that are infinite in some L go to that L
  __int128 n = 1;
  for (auto c : cs) n *= c;
  SupernaturalNumber nn = SupernaturalNumber::from_natural(static_cast<std::uint64_t>(n));
  std::vector<std::int64_t> absorb(r, 1);
  std::int64_t rest = static_cast<std::int64_t>(n);
  for (const auto& [q, e] : nn.factors()) {
    for (std::size_t i = 0; i < r; ++i) {
      if (!Ls[i].exponent(q).is_infinite()) continue;
      const std::int64_t qe = SupernaturalNumber::prime_power(q, e).to_int64();
      absorb[i] *= qe;
      rest /= qe;
      break;
    }
  }
  n_prime = rest;
  std::vector<std::int64_t> T;
  if (rest > 1) T.push_back(rest);
  for (auto c : absorb) {
    if (c > 1) T.push_back(c);
  }
  SystemSpec odos = SystemSpec::odometers(Ls);
  if (cs != T) {
    CoeWitness merge = build_finite_coe(cs, T);
    chain.then(product_coe(merge, identity_coe(odos)));
  }

  // interleave each absorbed cyclic factor before its odometer
  std::vector<Factor> s3;
  for (auto t : T) s3.push_back(Factor::cyclic(t));
  for (const auto& f : odos.factors()) s3.push_back(f);
  const SystemSpec S3(std::move(s3));
  std::vector<std::size_t> perm4;
  std::size_t cyc = 0;
  if (rest > 1) perm4.push_back(cyc++);
  for (std::size_t i = 0; i < r; ++i) {
    if (absorb[i] > 1) perm4.push_back(cyc++);
    perm4.push_back(T.size() + i);
  }
  if (!is_identity(perm4)) chain.then(permutation_coe(S3, perm4));

  std::vector<CoeWitness> last;
  bool nontrivial = false;
  if (rest > 1) last.push_back(identity_coe(SystemSpec({Factor::cyclic(rest)})));
  for (std::size_t i = 0; i < r; ++i) {
    if (absorb[i] > 1) {
      last.push_back(inverse_coe(build_basic_coe(absorb[i], Ls[i])));
      nontrivial = true;
    } else {
      last.push_back(identity_coe(SystemSpec({Factor::odometer(Ls[i])})));
    }
  }
  if (nontrivial) chain.then(product_all(last));
  return chain.finish(X);
}

}  // namespace

CoeWitness build_coe_witness(std::span<const SupernaturalNumber> Ms,
                             std::span<const SupernaturalNumber> Ns, const CoeDecision& d) {
  if (!d.equivalent) throw PreconditionError("decision is not positive");
  const std::size_t r = Ms.size();
  if (Ns.size() != r || d.sigma.size() != r) throw PreconditionError("decision does not fit input");
  const SystemSpec X = SystemSpec::odometers(Ms);
  if (std::equal(Ms.begin(), Ms.end(), Ns.begin(), Ns.end())) return identity_coe(X);

  std::vector<std::size_t> inv(r);
  SupernaturalList Ls(r);
  std::vector<std::int64_t> lx(r);
  std::vector<std::int64_t> ly(r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = d.sigma[i];
    inv[j] = i;
    Ls[i] = gcd(Ms[i], Ns[j]);
    lx[i] = excess(Ms[i], Ns[j]);
    ly[j] = excess(Ns[j], Ms[i]);
    const auto lxi = SupernaturalNumber::from_natural(static_cast<std::uint64_t>(lx[i]));
    const auto lyj = SupernaturalNumber::from_natural(static_cast<std::uint64_t>(ly[j]));
    if (!(mul(lxi, Ls[i]) == Ms[i]) || !(mul(lyj, Ls[i]) == Ns[j])) {
      throw VerificationError("factor splitting failed for pair " + std::to_string(i));
    }
  }
  std::vector<std::size_t> slot_x(r);
  std::iota(slot_x.begin(), slot_x.end(), 0);
  std::int64_t nx = 0;
  std::int64_t ny = 0;
  CoeWitness cx = to_canonical(Ms, lx, Ls, slot_x, nx);
  CoeWitness cy = to_canonical(Ns, ly, Ls, inv, ny);
  if (nx != ny || !(cx.target() == cy.target())) {
    throw VerificationError("canonical systems differ: " + cx.target().to_string() + " vs " +
                            cy.target().to_string());
  }
  CoeWitness w = compose_coe(cx, inverse_coe(cy));
  self_verify(w, "orbit equivalence witness");
  return w;
}

}  // namespace odocoe
