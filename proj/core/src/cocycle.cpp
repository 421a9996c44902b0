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

#include "odocoe/cocycle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "odocoe/error.hpp"

namespace odocoe {

namespace {

void require_level(unsigned have, unsigned need, const char* what) {
  if (have < need) {
    throw PreconditionError(std::string(what) + ": point at level " + std::to_string(have) +
                            " is below the required level " + std::to_string(need));
  }
}

std::pair<PointAtLevel, PointAtLevel> split_point(const PointAtLevel& x, std::size_t head) {
  PointAtLevel a{x.level, {x.residues.begin(), x.residues.begin() + static_cast<long>(head)}};
  PointAtLevel b{x.level, {x.residues.begin() + static_cast<long>(head), x.residues.end()}};
  return {std::move(a), std::move(b)};
}

GroupDescriptor concat_groups(const GroupDescriptor& a, const GroupDescriptor& b) {
  GroupDescriptor out = a;
  out.moduli.insert(out.moduli.end(), b.moduli.begin(), b.moduli.end());
  return out;
}

GroupHom block_diagonal(const GroupHom& a, const GroupHom& b) {
  const std::size_t rows = a.rows() + b.rows();
  const std::size_t cols = a.cols() + b.cols();
  std::vector<std::int64_t> e(rows * cols, 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) e[i * cols + j] = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      e[(a.rows() + i) * cols + a.cols() + j] = b(i, j);
    }
  }
  return GroupHom(rows, cols, std::move(e));
}

GroupHom multiply(const GroupHom& a, const GroupHom& b) {
  if (a.cols() != b.rows()) throw PreconditionError("homomorphism shapes do not chain");
  std::vector<std::int64_t> e(a.rows() * b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += a(i, k) * b(k, j);
    }
  }
  return GroupHom(a.rows(), b.cols(), std::move(e));
}

// l(0), ..., l(target_level)
std::vector<unsigned> modulus_list(const PointMap& map, unsigned target_level) {
  std::vector<unsigned> out;
  for (unsigned k = 0; k <= target_level; ++k) out.push_back(map.modulus(k));
  return out;
}

}  // namespace

GroupHom::GroupHom(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw PreconditionError("homomorphism entry count mismatch");
}

GroupHom GroupHom::from_matrix(const IntMatrix& m) {
  std::vector<std::int64_t> e;
  e.reserve(m.rows() * m.cols());
  for (const auto& v : m.entries()) {
    if (!v.fits_slong_p()) throw std::overflow_error("matrix entry " + v.get_str() + " too large");
    e.push_back(v.get_si());
  }
  return GroupHom(m.rows(), m.cols(), std::move(e));
}

GroupHom GroupHom::identity(std::size_t n) {
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return GroupHom(n, n, std::move(e));
}

GroupElement GroupHom::apply(const GroupElement& g) const {
  if (g.size() != cols_) throw PreconditionError("group element rank does not match homomorphism");
  GroupElement out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += a_[i * cols_ + j] * g[j];
  }
  return out;
}

IntMatrix GroupHom::to_matrix() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  }
  return m;
}

// ---- PointMap

PointMap::PointMap(SystemSpec source, SystemSpec target, ModulusFn modulus, EvalFn eval)
    : state_(std::make_shared<const State>(
          State{std::move(source), std::move(target), std::move(modulus), std::move(eval)})) {}

PointAtLevel PointMap::operator()(unsigned target_level, const PointAtLevel& x) const {
  if (x.residues.size() != source().size()) throw PreconditionError("point has wrong rank for map");
  require_level(x.level, modulus(target_level), "map evaluation");
  return state_->eval(target_level, x);
}

PointMap PointMap::identity(const SystemSpec& spec) {
  return PointMap(
      spec, spec, [](unsigned k) { return k; },
      [spec](unsigned k, const PointAtLevel& x) { return project_to(spec, x, k); });
}

PointMap PointMap::permutation(const SystemSpec& source, const std::vector<std::size_t>& perm) {
  if (perm.size() != source.size()) throw PreconditionError("permutation has wrong length");
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw PreconditionError("not a permutation");
  }
  std::vector<Factor> fs;
  for (auto p : perm) fs.push_back(source.factor(p));
  SystemSpec target(std::move(fs));
  return PointMap(
      source, target, [](unsigned k) { return k; },
      [source, perm](unsigned k, const PointAtLevel& x) {
        PointAtLevel p = project_to(source, x, k);
        PointAtLevel out{k, std::vector<std::int64_t>(perm.size())};
        for (std::size_t j = 0; j < perm.size(); ++j) out.residues[j] = p.residues[perm[j]];
        return out;
      });
}

PointMap compose(const PointMap& first, const PointMap& second) {
  if (!(first.target() == second.source())) {
    throw PreconditionError("cannot compose maps: " + first.target().to_string() + " vs " +
                            second.source().to_string());
  }
  return PointMap(
      first.source(), second.target(),
      [first, second](unsigned k) { return first.modulus(second.modulus(k)); },
      [first, second](unsigned k, const PointAtLevel& x) {
        return second(k, first(second.modulus(k), x));
      });
}

PointMap product(const PointMap& a, const PointMap& b) {
  const std::size_t head = a.source().size();
  return PointMap(
      a.source().concat(b.source()), a.target().concat(b.target()),
      [a, b](unsigned k) { return std::max(a.modulus(k), b.modulus(k)); },
      [a, b, head](unsigned k, const PointAtLevel& x) {
        auto [xa, xb] = split_point(x, head);
        PointAtLevel ya = a(k, xa);
        PointAtLevel yb = b(k, xb);
        ya.residues.insert(ya.residues.end(), yb.residues.begin(), yb.residues.end());
        return ya;
      });
}

// ---- GroupMap

GroupMap::GroupMap(SystemSpec source, GroupDescriptor target, unsigned modulus, EvalFn eval)
    : state_(std::make_shared<const State>(
          State{std::move(source), std::move(target), modulus, std::move(eval)})) {}

GroupMap GroupMap::constant(const SystemSpec& source, const GroupDescriptor& target,
                            const GroupElement& value) {
  GroupElement v = target.normalize(value);
  return GroupMap(source, target, 0, [v](const PointAtLevel&) { return v; });
}

GroupElement GroupMap::operator()(const PointAtLevel& x) const {
  if (x.residues.size() != source().size()) throw PreconditionError("point has wrong rank");
  require_level(x.level, modulus(), "group map evaluation");
  GroupElement v = state_->eval(x);
  if (v.size() != target().rank()) throw VerificationError("group map returned wrong rank");
  return target().normalize(std::move(v));
}

Transfer pointwise_inverse(const Transfer& u) {
  return Transfer(u.source(), u.target(), u.modulus(),
                  [u](const PointAtLevel& x) { return u.target().negate(u(x)); });
}

Transfer pointwise_product(const Transfer& u, const Transfer& v) {
  if (!(u.source() == v.source()) || !(u.target() == v.target())) {
    throw PreconditionError("pointwise product of incompatible transfers");
  }
  return Transfer(u.source(), u.target(), std::max(u.modulus(), v.modulus()),
                  [u, v](const PointAtLevel& x) { return u.target().add(u(x), v(x)); });
}

// ---- CocycleTable

CocycleTable::CocycleTable(SystemSpec source, GroupDescriptor target,
                           std::vector<GroupMap> generators)
    : source_(std::move(source)), target_(std::move(target)), generators_(std::move(generators)) {
  if (generators_.size() != source_.size()) {
    throw PreconditionError("cocycle needs one generator map per factor");
  }
  for (const auto& g : generators_) {
    if (!(g.source() == source_) || !(g.target() == target_)) {
      throw PreconditionError("generator map does not match the cocycle's spaces");
    }
  }
}

CocycleTable CocycleTable::homomorphism(const SystemSpec& source, const GroupDescriptor& target,
                                        const GroupHom& rho) {
  if (rho.rows() != target.rank() || rho.cols() != source.size()) {
    throw PreconditionError("homomorphism shape does not match the groups");
  }
  std::vector<GroupMap> gens;
  for (std::size_t i = 0; i < source.size(); ++i) {
    GroupElement e(source.size(), 0);
    e[i] = 1;
    gens.push_back(GroupMap::constant(source, target, rho.apply(e)));
  }
  CocycleTable out(source, target, std::move(gens));
  out.linear_ = rho;
  return out;
}

unsigned CocycleTable::modulus() const {
  unsigned m = 0;
  for (const auto& g : generators_) m = std::max(m, g.modulus());
  return m;
}

GroupElement extend_cocycle(const CocycleTable& a, const GroupElement& g, const PointAtLevel& x) {
  const GroupDescriptor G = a.source_group();
  GroupElement gn = G.normalize(g);
  if (a.linear()) return a.target().normalize(a.linear()->apply(gn));
  require_level(x.level, a.modulus(), "extend_cocycle");
  const std::vector<std::int64_t> mod = a.source().moduli(x.level);
  GroupElement acc = a.target().identity();
  PointAtLevel y = x;
  for (std::size_t i = 0; i < gn.size(); ++i) {
    const GroupMap& gen = a.generator(i);
    for (std::int64_t s = 0; s < gn[i]; ++s) {
      acc = a.target().add(acc, gen(y));
      y.residues[i] = (y.residues[i] + 1) % mod[i];
    }
    for (std::int64_t s = 0; s > gn[i]; --s) {
      y.residues[i] = (y.residues[i] + mod[i] - 1) % mod[i];
      acc = a.target().sub(acc, gen(y));
    }
  }
  return acc;
}

CocycleTable twist(const CocycleTable& a, const Transfer& u) {
  if (!(u.source() == a.source())) throw PreconditionError("transfer lives on another system");
  if (!(u.target() == a.target())) throw PreconditionError("transfer has another target group");
  std::vector<GroupMap> gens;
  const SystemSpec X = a.source();
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    GroupMap gi = a.generator(i);
    const unsigned m = std::max(gi.modulus(), u.modulus());
    gens.emplace_back(X, a.target(), m, [gi, u, X, i](const PointAtLevel& x) {
      GroupElement e(X.size(), 0);
      e[i] = 1;
      const GroupDescriptor& H = u.target();
      return H.sub(H.add(u(act(X, e, x)), gi(x)), u(x));
    });
  }
  return CocycleTable(X, a.target(), std::move(gens));
}

// ---- witnesses

void check_shape(const CoeWitness& w) {
  const SystemSpec& X = w.phi.source();
  const SystemSpec& Y = w.phi.target();
  if (!(w.psi.source() == Y) || !(w.psi.target() == X)) {
    throw PreconditionError("psi does not map " + Y.to_string() + " to " + X.to_string());
  }
  if (!(w.a.source() == X) || !(w.a.target() == Y.acting_group())) {
    throw PreconditionError("cocycle a does not map G x X into H");
  }
  if (!(w.b.source() == Y) || !(w.b.target() == X.acting_group())) {
    throw PreconditionError("cocycle b does not map H x Y into G");
  }
}

void check_shape(const ConjWitness& w) {
  const SystemSpec& X = w.phi.source();
  const SystemSpec& Y = w.phi.target();
  if (!(w.phi_inverse.source() == Y) || !(w.phi_inverse.target() == X)) {
    throw PreconditionError("inverse map does not map " + Y.to_string() + " to " + X.to_string());
  }
  if (w.rho.rows() != Y.size() || w.rho.cols() != X.size()) {
    throw PreconditionError("rho has shape " + std::to_string(w.rho.rows()) + "x" +
                            std::to_string(w.rho.cols()));
  }
}

CoeWitness identity_coe(const SystemSpec& spec) {
  auto rho = GroupHom::identity(spec.size());
  auto c = CocycleTable::homomorphism(spec, spec.acting_group(), rho);
  return CoeWitness{PointMap::identity(spec), c, PointMap::identity(spec), c};
}

CoeWitness inverse_coe(const CoeWitness& w) { return CoeWitness{w.psi, w.b, w.phi, w.a}; }

namespace {

// x -> c2(c1(e_i, x), f(x)) for a cocycle c1 over X, a map f: X -> Y and a
// cocycle c2 over Y.
CocycleTable compose_cocycles(const CocycleTable& c1, const PointMap& f, const CocycleTable& c2) {
  if (c1.linear() && c2.linear()) {
    return CocycleTable::homomorphism(c1.source(), c2.target(),
                                      multiply(*c2.linear(), *c1.linear()));
  }
  std::vector<GroupMap> gens;
  const SystemSpec X = c1.source();
  for (std::size_t i = 0; i < c1.generator_count(); ++i) {
    GroupMap gi = c1.generator(i);
    if (c2.linear()) {
      GroupHom rho = *c2.linear();
      gens.emplace_back(X, c2.target(), gi.modulus(),
                        [gi, rho](const PointAtLevel& x) { return rho.apply(gi(x)); });
      continue;
    }
    const unsigned l2 = c2.modulus();
    const unsigned m = std::max(gi.modulus(), f.modulus(l2));
    gens.emplace_back(X, c2.target(), m, [gi, f, c2, l2](const PointAtLevel& x) {
      return extend_cocycle(c2, gi(x), f(l2, x));
    });
  }
  return CocycleTable(X, c2.target(), std::move(gens));
}

CocycleTable product_cocycles(const CocycleTable& c1, const CocycleTable& c2) {
  const SystemSpec X = c1.source().concat(c2.source());
  const GroupDescriptor H = concat_groups(c1.target(), c2.target());
  if (c1.linear() && c2.linear()) {
    return CocycleTable::homomorphism(X, H, block_diagonal(*c1.linear(), *c2.linear()));
  }
  const std::size_t head = c1.source().size();
  const std::size_t h1 = c1.target().rank();
  std::vector<GroupMap> gens;
  for (std::size_t i = 0; i < c1.generator_count(); ++i) {
    GroupMap gi = c1.generator(i);
    gens.emplace_back(X, H, gi.modulus(), [gi, head, H](const PointAtLevel& x) {
      GroupElement v = gi(split_point(x, head).first);
      v.resize(H.rank(), 0);
      return v;
    });
  }
  for (std::size_t i = 0; i < c2.generator_count(); ++i) {
    GroupMap gi = c2.generator(i);
    gens.emplace_back(X, H, gi.modulus(), [gi, head, h1, H](const PointAtLevel& x) {
      GroupElement v(h1, 0);
      GroupElement t = gi(split_point(x, head).second);
      v.insert(v.end(), t.begin(), t.end());
      return v;
    });
  }
  return CocycleTable(X, H, std::move(gens));
}

}  // namespace

CoeWitness compose_coe(const CoeWitness& w1, const CoeWitness& w2) {
  if (!(w1.target() == w2.source())) {
    throw PreconditionError("witnesses do not chain: " + w1.target().to_string() + " vs " +
                            w2.source().to_string());
  }
  return CoeWitness{compose(w1.phi, w2.phi), compose_cocycles(w1.a, w1.phi, w2.a),
                    compose(w2.psi, w1.psi), compose_cocycles(w2.b, w2.psi, w1.b)};
}

CoeWitness product_coe(const CoeWitness& w1, const CoeWitness& w2) {
  return CoeWitness{product(w1.phi, w2.phi), product_cocycles(w1.a, w2.a),
                    product(w1.psi, w2.psi), product_cocycles(w1.b, w2.b)};
}

CoeWitness permutation_coe(const SystemSpec& source, const std::vector<std::size_t>& perm) {
  PointMap phi = PointMap::permutation(source, perm);
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
  PointMap psi = PointMap::permutation(phi.target(), inv);
  const std::size_t r = perm.size();
  std::vector<std::int64_t> fwd(r * r, 0);
  std::vector<std::int64_t> bwd(r * r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    fwd[j * r + perm[j]] = 1;
    bwd[perm[j] * r + j] = 1;
  }
  return CoeWitness{
      phi, CocycleTable::homomorphism(source, phi.target().acting_group(), GroupHom(r, r, fwd)),
      psi, CocycleTable::homomorphism(phi.target(), source.acting_group(), GroupHom(r, r, bwd))};
}

CoeWitness coe_from_conj(const ConjWitness& w) {
  check_shape(w);
  IntMatrix inv = invert_unimodular(w.rho);
  const SystemSpec& X = w.source();
  const SystemSpec& Y = w.target();
  return CoeWitness{
      w.phi, CocycleTable::homomorphism(X, Y.acting_group(), GroupHom::from_matrix(w.rho)),
      w.phi_inverse, CocycleTable::homomorphism(Y, X.acting_group(), GroupHom::from_matrix(inv))};
}

ConjWitness untwist_to_conjugacy(const CoeWitness& w, const Transfer& u, const IntMatrix& rho,
                                 unsigned k, unsigned radius) {
  check_shape(w);
  VerificationReport premise = check_untwist_premise(w, u, rho, k, radius);
  if (!premise.passed()) {
    throw PreconditionError("untwist premise fails:\n" + premise.summary());
  }
  const SystemSpec X = w.source();
  const SystemSpec Y = w.target();
  const GroupHom sigma = GroupHom::from_matrix(invert_unimodular(rho));
  const PointMap phi = w.phi;
  const PointMap psi = w.psi;
  const unsigned lu = u.modulus();
  // x -> u(x)^{-1}.phi(x)
  PointMap uphi(
      X, Y, [phi, lu](unsigned kk) { return std::max(phi.modulus(kk), lu); },
      [phi, u, X, Y, lu](unsigned kk, const PointAtLevel& x) {
        GroupElement h = u(project_to(X, x, lu));
        return act(Y, u.target().negate(h), phi(kk, x));
      });
  // y -> sigma(u(psi(y))).psi(y)
  PointMap vpsi(
      Y, X, [psi, lu](unsigned kk) { return psi.modulus(std::max(kk, lu)); },
      [psi, u, sigma, X, lu](unsigned kk, const PointAtLevel& y) {
        PointAtLevel x0 = psi(std::max(kk, lu), y);
        GroupElement g = sigma.apply(u(project_to(X, x0, lu)));
        return act(X, g, project_to(X, x0, kk));
      });
  return ConjWitness{rho, uphi, vpsi};
}

std::vector<bool> locality_audit(const CocycleTable& a) {
  std::vector<bool> out;
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    const GroupMap& g = a.generator(i);
    if (g.modulus() == 0) {
      out.push_back(true);
      continue;
    }
    LevelIndex top(a.source(), g.modulus());
    LevelIndex below(a.source(), g.modulus() - 1);
    std::vector<std::optional<GroupElement>> seen(below.size());
    bool tight = false;
    for (std::size_t p = 0; p < top.size() && !tight; ++p) {
      PointAtLevel x = top.point(p);
      GroupElement v = g(x);
      auto& slot = seen[below.index_of_projection(x.residues)];
      if (!slot) {
        slot = std::move(v);
      } else if (*slot != v) {
        tight = true;
      }
    }
    out.push_back(tight);
  }
  return out;
}

// ---- materialized tables

PointTable materialize(const PointMap& map, unsigned target_level) {
  PointTable t{map.source(), map.target(), target_level, modulus_list(map, target_level), {}};
  const unsigned top = *std::max_element(t.modulus.begin(), t.modulus.end());
  LevelIndex index(map.source(), top);
  t.values.reserve(index.size() * map.target().size());
  for (std::size_t p = 0; p < index.size(); ++p) {
    PointAtLevel y = map(target_level, index.point(p));
    t.values.insert(t.values.end(), y.residues.begin(), y.residues.end());
  }
  return t;
}

CocycleData materialize(const CocycleTable& a) {
  CocycleData d{a.source(), a.target(), a.modulus(), {}, {}};
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    d.generator_moduli.push_back(a.generator(i).modulus());
  }
  LevelIndex index(a.source(), d.level);
  for (std::size_t p = 0; p < index.size(); ++p) {
    PointAtLevel x = index.point(p);
    for (std::size_t i = 0; i < a.generator_count(); ++i) {
      GroupElement v = a.generator(i)(x);
      d.values.insert(d.values.end(), v.begin(), v.end());
    }
  }
  return d;
}

PointMap from_table(const PointTable& table) {
  if (table.modulus.size() != table.target_level + 1) {
    throw PreconditionError("point table needs one modulus per level up to the target level");
  }
  const unsigned top = *std::max_element(table.modulus.begin(), table.modulus.end());
  auto index = std::make_shared<const LevelIndex>(table.source, top);
  const std::size_t rank = table.target.size();
  if (table.values.size() != index->size() * rank) {
    throw PreconditionError("point table has " + std::to_string(table.values.size()) +
                            " values, expected " + std::to_string(index->size() * rank));
  }
  auto data = std::make_shared<const PointTable>(table);
  return PointMap(
      table.source, table.target,
      [data](unsigned k) {
        if (k > data->target_level) {
          throw PreconditionError("table holds levels up to " +
                                  std::to_string(data->target_level));
        }
        return data->modulus[k];
      },
      [data, index, rank](unsigned k, const PointAtLevel& x) {
        if (k > data->target_level) {
          throw PreconditionError("table holds levels up to " +
                                  std::to_string(data->target_level));
        }
        // canonical lift of the level-l(k) cylinder to the table level
        PointAtLevel c = project_to(data->source, x, data->modulus[k]);
        const std::size_t at = index->index_of(c.residues) * rank;
        PointAtLevel y{data->target_level,
                       {data->values.begin() + static_cast<long>(at),
                        data->values.begin() + static_cast<long>(at + rank)}};
        return project_to(data->target, y, k);
      });
}

CocycleTable from_table(const CocycleData& data) {
  const SystemSpec X = data.source;
  if (data.generator_moduli.size() != X.size()) {
    throw PreconditionError("cocycle table needs one modulus per generator");
  }
  auto index = std::make_shared<const LevelIndex>(X, data.level);
  const std::size_t hr = data.target.rank();
  const std::size_t stride = X.size() * hr;
  if (data.values.size() != index->size() * stride) {
    throw PreconditionError("cocycle table has the wrong number of values");
  }
  auto values = std::make_shared<const std::vector<std::int64_t>>(data.values);
  std::vector<GroupMap> gens;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const unsigned m = data.generator_moduli[i];
    if (m > data.level) throw PreconditionError("generator modulus above the table level");
    gens.emplace_back(X, data.target, m,
                      [X, m, index, values, i, hr, stride](const PointAtLevel& x) {
                        PointAtLevel c = project_to(X, x, m);
                        const std::size_t at = index->index_of(c.residues) * stride + i * hr;
                        return GroupElement(values->begin() + static_cast<long>(at),
                                            values->begin() + static_cast<long>(at + hr));
                      });
  }
  return CocycleTable(X, data.target, std::move(gens));
}

CoeLevels coe_levels(const CoeWitness& w, unsigned k) {
  return CoeLevels{std::max({k, w.b.modulus(), w.psi.modulus(k)}),
                   std::max({k, w.a.modulus(), w.phi.modulus(k)})};
}

}  // namespace odocoe
