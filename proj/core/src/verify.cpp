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

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "odocoe/cocycle.hpp"
#include "odocoe/error.hpp"

namespace odocoe {

// ---- report

VerificationReport::VerificationReport(std::string subject, unsigned level, unsigned radius)
    : subject_(std::move(subject)), level_(level), radius_(radius) {}

void VerificationReport::fail(const std::string& name, std::string why) {
  check(name).observe(false, [&] { return why; });
}

bool VerificationReport::passed() const {
  if (checks_.empty()) return false;
  for (const auto& [name, c] : checks_) {
    if (c.failed) return false;
  }
  return true;
}

std::uint64_t VerificationReport::violations() const {
  std::uint64_t n = 0;
  for (const auto& [name, c] : checks_) n += c.failed;
  return n;
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& [name, c] : other.checks_) {
    Check& mine = checks_[name];
    mine.evaluated += c.evaluated;
    mine.failed += c.failed;
    for (const auto& e : c.examples) {
      if (mine.examples.size() < kMaxExamples) mine.examples.push_back(e);
    }
  }
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << subject_ << " (level " << level_ << ", radius " << radius_
     << "): " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& [name, c] : checks_) {
    os << "  " << name << ": " << c.evaluated << " evaluated, " << c.failed << " failed\n";
    for (const auto& e : c.examples) os << "    e.g. " << e << '\n';
  }
  for (const auto& n : notes_) os << "  note: " << n << '\n';
  return os.str();
}

namespace {

constexpr std::uint64_t kVerifyGuard = std::uint64_t{1} << 23;
constexpr std::size_t kSpotSamples = 512;

std::int64_t floor_div(std::int64_t a, std::int64_t n) {
  std::int64_t q = a / n;
  return (a % n != 0 && (a < 0)) ? q - 1 : q;
}

// Group elements with |g_i| <= r_i, r_i = R on Z coordinates and
// min(R, n-1) on Z/n coordinates, as integer lifts.
struct Box {
  std::vector<GroupElement> elems;
  std::vector<bool> canonical;  // first lift of its normalized class

  Box(const GroupDescriptor& G, unsigned R) {
    std::vector<std::int64_t> r(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) {
      const std::int64_t n = G.moduli[i];
      r[i] = n == 0 ? R : std::min<std::int64_t>(R, n - 1);
    }
    GroupElement g(G.rank());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = -r[i];
    std::set<GroupElement> seen;
    for (;;) {
      elems.push_back(g);
      canonical.push_back(seen.insert(G.normalize(g)).second);
      std::size_t i = g.size();
      while (i > 0 && g[i - 1] == r[i - 1]) {
        g[i - 1] = -r[i - 1];
        --i;
      }
      if (i == 0) break;
      ++g[i - 1];
    }
  }
};

// Generator values of a cocycle at its modulus level with prefix sums along
// each axis, so a(g, x) costs O(rank) for any integer lift g.
class AxisTable {
 public:
  AxisTable(const CocycleTable& a, unsigned level)
      : X_(a.source()), H_(a.target()), index_(a.source(), level, kVerifyGuard) {
    const std::size_t r = X_.size();
    hr_ = H_.rank();
    moduli_ = index_.moduli();
    strides_.assign(r, 1);
    for (std::size_t i = r; i-- > 1;) strides_[i - 1] = strides_[i] * moduli_[i];
    const std::size_t n = index_.size();
    gen_.assign(n * r * hr_, 0);
    prefix_.assign(n * r * hr_, 0);
    total_.assign(n * r * hr_, 0);
    for (std::size_t p = 0; p < n; ++p) {
      PointAtLevel x = index_.point(p);
      for (std::size_t i = 0; i < r; ++i) {
        GroupElement v = a.generator(i)(x);
        std::copy(v.begin(), v.end(), gen_.begin() + at(p, i));
      }
    }
    std::vector<std::int64_t> res(r);
    for (std::size_t p = 0; p < n; ++p) {
      index_.residues(p, res);
      for (std::size_t i = 0; i < r; ++i) {
        if (res[i] != 0) continue;
        // walk the e_i-cycle through this base point
        std::vector<std::int64_t> acc(hr_, 0);
        for (std::int64_t t = 0; t < moduli_[i]; ++t) {
          const std::size_t q = p + static_cast<std::size_t>(t) * strides_[i];
          std::copy(acc.begin(), acc.end(), prefix_.begin() + at(q, i));
          for (std::size_t h = 0; h < hr_; ++h) acc[h] = norm(h, acc[h] + gen_[at(q, i) + h]);
        }
        for (std::int64_t t = 0; t < moduli_[i]; ++t) {
          const std::size_t q = p + static_cast<std::size_t>(t) * strides_[i];
          std::copy(acc.begin(), acc.end(), total_.begin() + at(q, i));
        }
      }
    }
  }

  const LevelIndex& index() const { return index_; }
  std::size_t target_rank() const { return hr_; }

  /// a(g, x) for the point with index p, accumulated into out (normalized);
  /// returns the index of g.x.
  std::size_t eval(const GroupElement& g, std::size_t p, std::int64_t* out) const {
    for (std::size_t h = 0; h < hr_; ++h) out[h] = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0) continue;
      const std::int64_t m = moduli_[i];
      const std::int64_t yi = static_cast<std::int64_t>((p / strides_[i]) % m);
      const std::size_t base = p - static_cast<std::size_t>(yi) * strides_[i];
      const std::int64_t s = yi + g[i];
      const std::int64_t q = floor_div(s, m);
      const std::int64_t rem = s - q * m;
      const std::size_t dest = base + static_cast<std::size_t>(rem) * strides_[i];
      for (std::size_t h = 0; h < hr_; ++h) {
        __int128 v = static_cast<__int128>(q) * total_[at(p, i) + h] + prefix_[at(dest, i) + h] -
                     prefix_[at(p, i) + h] + out[h];
        if (H_.moduli[h] != 0) v %= H_.moduli[h];
        out[h] = norm(h, static_cast<std::int64_t>(v));
      }
      p = dest;
    }
    return p;
  }

  GroupElement eval(const GroupElement& g, std::size_t p) const {
    GroupElement out(hr_);
    eval(g, p, out.data());
    return out;
  }

  /// a(n e_i, base) for a cyclic coordinate; must vanish.
  GroupElement cycle_total(std::size_t p, std::size_t i) const {
    return GroupElement(total_.begin() + static_cast<long>(at(p, i)),
                        total_.begin() + static_cast<long>(at(p, i) + hr_));
  }

 private:
  std::size_t at(std::size_t p, std::size_t i) const { return (p * X_.size() + i) * hr_; }
  std::int64_t norm(std::size_t h, std::int64_t v) const {
    const std::int64_t n = H_.moduli[h];
    if (n == 0) return v;
    v %= n;
    return v < 0 ? v + n : v;
  }

  SystemSpec X_;
  GroupDescriptor H_;
  LevelIndex index_;
  std::size_t hr_ = 0;
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::vector<std::int64_t> gen_;
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> total_;
};

std::string describe_pair(const GroupElement& g, const PointAtLevel& x) {
  return "g=" + to_string(g) + " x=" + to_string(x);
}

// Cocycle identity and torsion, plus per-point injectivity when asked, on
// points at the table level (values at higher levels factor through this
// projection).
void check_cocycle(const AxisTable& A, const SystemSpec& X, const GroupDescriptor& H,
                   const Box& box, const std::string& name, bool with_injectivity,
                   VerificationReport& rep) {
  const GroupDescriptor G = X.acting_group();
  const LevelIndex& idx = A.index();
  auto& identity = rep.check(name + ": cocycle identity");
  auto& torsion = rep.check(name + ": torsion");
  const std::size_t hr = A.target_rank();
  std::vector<std::int64_t> v1(hr), v2(hr), v12(hr);
  GroupElement g12(G.rank());
  std::vector<std::int64_t> res(X.size());
  for (std::size_t p = 0; p < idx.size(); ++p) {
    idx.residues(p, res);
    for (std::size_t i = 0; i < X.size(); ++i) {
      if (G.moduli[i] == 0 || res[i] != 0) continue;
      GroupElement t = A.cycle_total(p, i);
      torsion.observe(t == H.identity(), [&] {
        return "a(" + std::to_string(G.moduli[i]) + "e_" + std::to_string(i) + ", " +
               to_string(idx.point(p)) + ") = " + to_string(t);
      });
    }
    for (const auto& g2 : box.elems) {
      const std::size_t q = A.eval(g2, p, v2.data());
      for (const auto& g1 : box.elems) {
        A.eval(g1, q, v1.data());
        for (std::size_t i = 0; i < g12.size(); ++i) g12[i] = g1[i] + g2[i];
        A.eval(g12, p, v12.data());
        bool ok = true;
        for (std::size_t h = 0; h < hr; ++h) {
          std::int64_t s = v1[h] + v2[h];
          if (H.moduli[h] != 0) s %= H.moduli[h];
          if (s != v12[h]) ok = false;
        }
        identity.observe(ok, [&] {
          return "g1=" + to_string(g1) + " g2=" + to_string(g2) + " x=" + to_string(idx.point(p));
        });
      }
    }
    if (!with_injectivity) continue;
    std::vector<GroupElement> values;
    for (std::size_t b = 0; b < box.elems.size(); ++b) {
      if (box.canonical[b]) values.push_back(A.eval(box.elems[b], p));
    }
    std::sort(values.begin(), values.end());
    const bool distinct = std::adjacent_find(values.begin(), values.end()) == values.end();
    rep.check(name + ": injective on box").observe(distinct, [&] {
      return "collision at x=" + to_string(idx.point(p));
    });
  }
}

// Evenly spaced sample of a level's point indices.
std::vector<std::size_t> sample_indices(std::size_t n) {
  std::vector<std::size_t> out;
  const std::size_t step = std::max<std::size_t>(1, n / kSpotSamples);
  for (std::size_t p = 0; p < n; p += step) out.push_back(p);
  return out;
}

// Evaluation at l(k) agrees with evaluation through level l(k)+1, and the
// level-k output projects to the level-(k-1) output.
void spot_check_map(const PointMap& f, unsigned k, const std::string& name,
                    VerificationReport& rep) {
  const SystemSpec& X = f.source();
  const SystemSpec& Y = f.target();
  try {
    const unsigned s = f.modulus(k);
    LevelIndex up(X, s + 1, kVerifyGuard);
    auto& c = rep.check(name + ": well-defined");
    for (std::size_t p : sample_indices(up.size())) {
      PointAtLevel x = up.point(p);
      PointAtLevel lhs = f(k, x);
      PointAtLevel rhs = f(k, project(X, x));
      c.observe(lhs == rhs, [&] { return "x=" + to_string(x); });
    }
    if (k > 0) {
      const unsigned s2 = std::max(s, f.modulus(k - 1));
      LevelIndex li(X, s2, kVerifyGuard);
      auto& pc = rep.check(name + ": projection-compatible");
      for (std::size_t p : sample_indices(li.size())) {
        PointAtLevel x = li.point(p);
        pc.observe(project(Y, f(k, x)) == f(k - 1, x), [&] { return "x=" + to_string(x); });
      }
    }
  } catch (const std::overflow_error& e) {
    rep.note(name + " spot checks skipped: " + e.what());
  } catch (const PreconditionError& e) {
    rep.note(name + " spot checks skipped: " + e.what());
  }
}

void spot_check_generators(const CocycleTable& a, const std::string& name,
                           VerificationReport& rep) {
  const SystemSpec& X = a.source();
  try {
    LevelIndex up(X, a.modulus() + 1, kVerifyGuard);
    auto& c = rep.check(name + ": generators well-defined");
    for (std::size_t p : sample_indices(up.size())) {
      PointAtLevel x = up.point(p);
      for (std::size_t i = 0; i < a.generator_count(); ++i) {
        const GroupMap& g = a.generator(i);
        c.observe(g(x) == g(project_to(X, x, g.modulus())),
                  [&] { return "e_" + std::to_string(i) + " x=" + to_string(x); });
      }
    }
  } catch (const std::overflow_error& e) {
    rep.note(name + " generator spot checks skipped: " + e.what());
  } catch (const PreconditionError& e) {
    rep.note(name + " generator spot checks skipped: " + e.what());
  }
}

struct Names {
  std::string phi, a, psi, b;
};

// Checks on the source side of (phi, a); the other side is the same call
// with the roles swapped.
void verify_side(const PointMap& phi, const CocycleTable& a, const PointMap& psi,
                 const CocycleTable& b, unsigned k, unsigned R, const Names& n,
                 VerificationReport& rep) {
  const SystemSpec& X = phi.source();
  const SystemSpec& Y = phi.target();
  const GroupDescriptor G = X.acting_group();
  const GroupDescriptor H = Y.acting_group();
  const unsigned la = a.modulus();
  const unsigned lb = b.modulus();
  const Box box(G, R);

  AxisTable A(a, la);
  AxisTable B(b, lb);
  check_cocycle(A, X, H, box, n.a, true, rep);
  spot_check_generators(a, n.a, rep);
  spot_check_map(phi, k, n.phi, rep);

  // Points at level sx, phi compared at the finest target level tphi <=
  // max(k, lb) they determine; tphi >= lb so b can be evaluated.
  const unsigned sx = std::max({k, la, phi.modulus(lb)});
  unsigned tphi = lb;
  while (tphi < std::max(k, lb) && phi.modulus(tphi + 1) <= sx) ++tphi;
  const unsigned sphi = phi.modulus(tphi);
  rep.note(n.phi + ": equivariance on level-" + std::to_string(sx) + " points, compared at level " +
           std::to_string(tphi));
  LevelIndex Is(X, sphi, kVerifyGuard);
  LevelIndex Ix(X, sx, kVerifyGuard);
  const std::vector<std::int64_t> ymod = Y.moduli(tphi);
  const std::vector<std::int64_t> smod = Is.moduli();
  const std::size_t ry = Y.size();
  std::vector<std::int64_t> table(Is.size() * ry);
  for (std::size_t p = 0; p < Is.size(); ++p) {
    PointAtLevel y = phi(tphi, Is.point(p));
    std::copy(y.residues.begin(), y.residues.end(), table.begin() + static_cast<long>(p * ry));
  }
  LevelIndex Iy_b(Y, lb, kVerifyGuard);

  // With constant cocycles both identities are additive in g, so on the
  // finite, invariant level sets they follow from the generators +-e_i.
  const bool linear = a.linear() && b.linear();
  std::vector<GroupElement> gens;
  if (linear) {
    for (std::size_t i = 0; i < G.rank(); ++i) {
      for (std::int64_t s : {1, -1}) {
        GroupElement e(G.rank(), 0);
        e[i] = s;
        gens.push_back(e);
      }
    }
    rep.note(n.phi + ": constant cocycles, equivariance checked on generators of the box");
  }
  const std::vector<GroupElement>& elems = linear ? gens : box.elems;

  auto& equiv = rep.check(n.phi + ": equivariance");
  auto& inverse = rep.check(n.b + "(" + n.a + "(g,x)," + n.phi + "(x)) = g");
  std::vector<std::int64_t> x(X.size()), gx(X.size()), h(H.rank()), rhs(ry), back(G.rank());
  GroupElement hv(H.rank());
  std::vector<GroupElement> normalized;
  for (const auto& g : elems) normalized.push_back(G.normalize(g));
  for (std::size_t p = 0; p < Ix.size(); ++p) {
    Ix.residues(p, x);
    const std::size_t p_la = A.index().index_of_projection(x);
    const std::size_t p_s = Is.index_of_projection(x);
    const std::int64_t* fx = table.data() + p_s * ry;
    const std::size_t y_lb = Iy_b.index_of_projection(std::span<const std::int64_t>(fx, ry));
    for (std::size_t e = 0; e < elems.size(); ++e) {
      const GroupElement& g = elems[e];
      for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t v = (x[i] + g[i]) % smod[i];
        gx[i] = v < 0 ? v + smod[i] : v;
      }
      const std::int64_t* lhs = table.data() + Is.index_of(gx) * ry;
      A.eval(g, p_la, h.data());
      bool ok = true;
      for (std::size_t j = 0; j < ry; ++j) {
        std::int64_t v = (fx[j] + h[j] % ymod[j]) % ymod[j];
        rhs[j] = v < 0 ? v + ymod[j] : v;
        if (rhs[j] != lhs[j]) ok = false;
      }
      equiv.observe(ok, [&] { return describe_pair(g, Ix.point(p)); });
      std::copy(h.begin(), h.end(), hv.begin());
      B.eval(hv, y_lb, back.data());
      inverse.observe(std::equal(back.begin(), back.end(), normalized[e].begin()), [&] {
        return describe_pair(g, Ix.point(p)) + " gives " + to_string(GroupElement(back));
      });
    }
  }

  // psi(phi(x)) = x at level k, with direct evaluation
  auto& round = rep.check(n.psi + " o " + n.phi + " = id");
  const unsigned t = psi.modulus(k);
  LevelIndex Ir(X, std::max(k, phi.modulus(t)), kVerifyGuard);
  for (std::size_t p = 0; p < Ir.size(); ++p) {
    PointAtLevel xp = Ir.point(p);
    PointAtLevel back = psi(k, phi(t, xp));
    round.observe(back == project_to(X, xp, k), [&] { return "x=" + to_string(xp); });
  }
}

}  // namespace

VerificationReport verify_cocycle_identity(const CocycleTable& a, unsigned k, unsigned radius) {
  VerificationReport rep("cocycle on " + a.source().to_string() + " into " + a.target().to_string(),
                         k, radius);
  try {
    AxisTable A(a, a.modulus());
    check_cocycle(A, a.source(), a.target(), Box(a.source_group(), radius), "a", false, rep);
    rep.note("identity checked on level-" + std::to_string(a.modulus()) +
             " points; values at level " + std::to_string(k) + " factor through them");
  } catch (const PreconditionError& e) {
    rep.fail("enumeration", e.what());
  } catch (const std::overflow_error& e) {
    rep.fail("enumeration", e.what());
  }
  return rep;
}

VerificationReport verify_coe(const CoeWitness& w, unsigned k, unsigned radius) {
  VerificationReport rep("coe " + w.source().to_string() + " -> " + w.target().to_string(), k,
                         radius);
  try {
    check_shape(w);
    verify_side(w.phi, w.a, w.psi, w.b, k, radius, {"phi", "a", "psi", "b"}, rep);
    verify_side(w.psi, w.b, w.phi, w.a, k, radius, {"psi", "b", "phi", "a"}, rep);
    rep.note("group box: |g_i| <= " + std::to_string(radius) +
             " on Z coordinates, <= n-1 on Z/n coordinates");
    rep.note("cocycle tables at levels " + std::to_string(w.a.modulus()) + " (a) and " +
             std::to_string(w.b.modulus()) + " (b)");
  } catch (const PreconditionError& e) {
    rep.fail("evaluation", e.what());
  } catch (const std::overflow_error& e) {
    rep.fail("evaluation", e.what());
  }
  return rep;
}

VerificationReport verify_conj(const ConjWitness& w, unsigned k, unsigned radius) {
  VerificationReport rep("conj " + w.source().to_string() + " -> " + w.target().to_string(), k,
                         radius);
  try {
    check_shape(w);
    const GroupDescriptor G = w.source().acting_group();
    const GroupDescriptor H = w.target().acting_group();
    const GroupHom rho = GroupHom::from_matrix(w.rho);
    auto& tors = rep.check("rho: torsion");
    for (std::size_t i = 0; i < G.rank(); ++i) {
      if (G.moduli[i] == 0) continue;
      GroupElement e(G.rank(), 0);
      e[i] = G.moduli[i];
      tors.observe(H.normalize(rho.apply(e)) == H.identity(),
                   [&] { return "rho(n e_" + std::to_string(i) + ") != 0"; });
    }
    const bool unimodular = w.rho.square() && is_unimodular(w.rho);
    rep.check("rho: unimodular").observe(unimodular, [&] { return w.rho.to_string(); });
    if (unimodular) {
      VerificationReport inner = verify_coe(coe_from_conj(w), k, radius);
      rep.merge(inner);
    }
  } catch (const PreconditionError& e) {
    rep.fail("evaluation", e.what());
  } catch (const std::overflow_error& e) {
    rep.fail("evaluation", e.what());
  }
  return rep;
}

VerificationReport check_untwist_premise(const CoeWitness& w, const Transfer& u,
                                         const IntMatrix& rho, unsigned k, unsigned radius) {
  VerificationReport rep("untwist premise on " + w.source().to_string(), k, radius);
  try {
    check_shape(w);
    const SystemSpec& X = w.source();
    const GroupDescriptor G = X.acting_group();
    const GroupDescriptor H = w.target().acting_group();
    if (!(u.source() == X) || !(u.target() == H)) {
      throw PreconditionError("transfer does not map the source into the target group");
    }
    const GroupHom r = GroupHom::from_matrix(rho);
    if (r.rows() != H.rank() || r.cols() != G.rank()) throw PreconditionError("rho has wrong shape");
    AxisTable A(w.a, w.a.modulus());
    const unsigned lu = u.modulus();
    LevelIndex Iu(X, lu, kVerifyGuard);
    std::vector<GroupElement> U(Iu.size());
    for (std::size_t p = 0; p < Iu.size(); ++p) U[p] = u(Iu.point(p));
    LevelIndex Ix(X, std::max({k, w.a.modulus(), lu}), kVerifyGuard);
    const Box box(G, radius);
    auto& c = rep.check("a(g,x) = u(g.x) rho(g) u(x)^-1");
    std::vector<std::int64_t> x(X.size());
    for (std::size_t p = 0; p < Ix.size(); ++p) {
      Ix.residues(p, x);
      const std::size_t p_la = A.index().index_of_projection(x);
      const GroupElement& ux = U[Iu.index_of_projection(x)];
      for (const auto& g : box.elems) {
        std::vector<std::int64_t> gx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) gx[i] = x[i] + g[i];
        const std::vector<std::int64_t>& um = Iu.moduli();
        for (std::size_t i = 0; i < gx.size(); ++i) gx[i] = ((gx[i] % um[i]) + um[i]) % um[i];
        GroupElement rhs = H.sub(H.add(U[Iu.index_of(gx)], H.normalize(r.apply(g))), ux);
        c.observe(A.eval(g, p_la) == rhs, [&] { return describe_pair(g, Ix.point(p)); });
      }
    }
  } catch (const PreconditionError& e) {
    rep.fail("evaluation", e.what());
  } catch (const std::overflow_error& e) {
    rep.fail("evaluation", e.what());
  }
  return rep;
}

}  // namespace odocoe
