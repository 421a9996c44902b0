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

#pragma once

// Locally constant maps between truncated product systems, cocycles given by
// their values on generators, COE/conjugacy witnesses and their exhaustive
// desk-scale verification.
//
// A map X -> Y is continuous iff every target coordinate at level k depends
// only on a finite-level cylinder of the source; each map therefore carries a
// modulus k -> l(k) and is evaluated on points of level >= l(k).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "odocoe/dynamics.hpp"
#include "odocoe/intmat.hpp"

namespace odocoe {

/// Integer matrix acting on group coordinates, rows = target rank.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries);
  static GroupHom from_matrix(const IntMatrix& m);
  static GroupHom identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  /// Unnormalized product with an integer vector.
  GroupElement apply(const GroupElement& g) const;
  IntMatrix to_matrix() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Locally constant map between product systems.
class PointMap {
 public:
  using ModulusFn = std::function<unsigned(unsigned)>;
  using EvalFn = std::function<PointAtLevel(unsigned, const PointAtLevel&)>;

  PointMap(SystemSpec source, SystemSpec target, ModulusFn modulus, EvalFn eval);

  static PointMap identity(const SystemSpec& spec);
  /// Target factor j is source factor perm[j].
  static PointMap permutation(const SystemSpec& source, const std::vector<std::size_t>& perm);

  const SystemSpec& source() const { return state_->source; }
  const SystemSpec& target() const { return state_->target; }
  /// Source level needed to determine the image at `target_level`.
  unsigned modulus(unsigned target_level) const { return state_->modulus(target_level); }
  /// Image at `target_level`; x must have level >= modulus(target_level).
  PointAtLevel operator()(unsigned target_level, const PointAtLevel& x) const;

 private:
  struct State {
    SystemSpec source;
    SystemSpec target;
    ModulusFn modulus;
    EvalFn eval;
  };
  std::shared_ptr<const State> state_;
};

/// second o first
PointMap compose(const PointMap& first, const PointMap& second);
PointMap product(const PointMap& a, const PointMap& b);

/// Locally constant map from a system into a finitely generated abelian group.
class GroupMap {
 public:
  using EvalFn = std::function<GroupElement(const PointAtLevel&)>;

  GroupMap(SystemSpec source, GroupDescriptor target, unsigned modulus, EvalFn eval);
  static GroupMap constant(const SystemSpec& source, const GroupDescriptor& target,
                           const GroupElement& value);

  const SystemSpec& source() const { return state_->source; }
  const GroupDescriptor& target() const { return state_->target; }
  unsigned modulus() const { return state_->modulus; }
  /// Normalized value; x must have level >= modulus().
  GroupElement operator()(const PointAtLevel& x) const;

 private:
  struct State {
    SystemSpec source;
    GroupDescriptor target;
    unsigned modulus;
    EvalFn eval;
  };
  std::shared_ptr<const State> state_;
};

/// Transfer function u: X -> H used for twisting.
using Transfer = GroupMap;

Transfer pointwise_inverse(const Transfer& u);
Transfer pointwise_product(const Transfer& u, const Transfer& v);

/// Cocycle a: G x X -> H stored through its generator maps x -> a(e_i, x);
/// other values follow from the cocycle identity.
class CocycleTable {
 public:
  CocycleTable(SystemSpec source, GroupDescriptor target, std::vector<GroupMap> generators);
  /// Constant cocycle a(g, x) = rho(g).
  static CocycleTable homomorphism(const SystemSpec& source, const GroupDescriptor& target,
                                   const GroupHom& rho);

  const SystemSpec& source() const { return source_; }
  GroupDescriptor source_group() const { return source_.acting_group(); }
  const GroupDescriptor& target() const { return target_; }
  std::size_t generator_count() const { return generators_.size(); }
  const GroupMap& generator(std::size_t i) const { return generators_.at(i); }
  /// Largest generator modulus.
  unsigned modulus() const;
  /// Set when the cocycle is a homomorphism independent of x.
  const std::optional<GroupHom>& linear() const { return linear_; }

 private:
  SystemSpec source_;
  GroupDescriptor target_;
  std::vector<GroupMap> generators_;
  std::optional<GroupHom> linear_;
};

/// a(g, x) by telescoping along the canonical decomposition of g: torsion
/// coordinates reduced into [0, n), then coordinates in index order.
GroupElement extend_cocycle(const CocycleTable& a, const GroupElement& g, const PointAtLevel& x);

/// a(g, x) = u(g.x) a'(g, x) u(x)^{-1}
CocycleTable twist(const CocycleTable& a, const Transfer& u);

/// Continuous orbit equivalence X -> Y: phi(g.x) = a(g,x).phi(x),
/// psi(h.y) = b(h,y).psi(y), psi = phi^{-1}.
struct CoeWitness {
  PointMap phi;
  CocycleTable a;
  PointMap psi;
  CocycleTable b;

  const SystemSpec& source() const { return phi.source(); }
  const SystemSpec& target() const { return phi.target(); }
};

/// Conjugacy X -> Y: phi(g.x) = rho(g).phi(x).
struct ConjWitness {
  IntMatrix rho;
  PointMap phi;
  PointMap phi_inverse;

  const SystemSpec& source() const { return phi.source(); }
  const SystemSpec& target() const { return phi.target(); }
};

/// Throws PreconditionError when the pieces of a witness do not fit together.
void check_shape(const CoeWitness& w);
void check_shape(const ConjWitness& w);

CoeWitness identity_coe(const SystemSpec& spec);
CoeWitness inverse_coe(const CoeWitness& w);
/// w1: X -> Y, w2: Y -> Z gives X -> Z with a(g,x) = a2(a1(g,x), phi1(x)).
CoeWitness compose_coe(const CoeWitness& w1, const CoeWitness& w2);
/// Product witness X1 x X2 -> Y1 x Y2.
CoeWitness product_coe(const CoeWitness& w1, const CoeWitness& w2);
/// Conjugacy permuting factors: target factor j is source factor perm[j].
CoeWitness permutation_coe(const SystemSpec& source, const std::vector<std::size_t>& perm);
/// A conjugacy viewed as an orbit equivalence with constant cocycles.
CoeWitness coe_from_conj(const ConjWitness& w);

/// Result of an exhaustive check; violations are data, not errors.
class VerificationReport {
 public:
  struct Check {
    std::uint64_t evaluated = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> examples;  // first few counterexamples

    template <typename Describe>
    void observe(bool ok, Describe&& describe) {
      ++evaluated;
      if (ok) return;
      ++failed;
      if (examples.size() < kMaxExamples) examples.push_back(describe());
    }
  };
  static constexpr std::size_t kMaxExamples = 5;

  VerificationReport() = default;
  VerificationReport(std::string subject, unsigned level, unsigned radius);

  const std::string& subject() const { return subject_; }
  unsigned level() const { return level_; }
  unsigned radius() const { return radius_; }

  Check& check(const std::string& name) { return checks_[name]; }
  const std::map<std::string, Check>& checks() const { return checks_; }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  const std::vector<std::string>& notes() const { return notes_; }
  /// Records an unevaluable check (for example a level outside a table).
  void fail(const std::string& name, std::string why);

  bool passed() const;
  std::uint64_t violations() const;
  /// Associative merge; check tallies add up.
  void merge(const VerificationReport& other);
  std::string summary() const;

 private:
  std::string subject_;
  unsigned level_ = 0;
  unsigned radius_ = 0;
  std::map<std::string, Check> checks_;
  std::vector<std::string> notes_;
};

inline constexpr unsigned kDefaultLevel = 4;
inline constexpr unsigned kDefaultRadius = 6;

/// Cocycle identity a(g1+g2, x) = a(g1, g2.x) a(g2, x) for all g1, g2 in the
/// box [-R, R] (torsion coordinates clipped to their order) and all points
/// at level max(k, modulus); also a(n e_i, x) = 0 on torsion generators.
VerificationReport verify_cocycle_identity(const CocycleTable& a, unsigned k, unsigned radius);

/// Exhaustive COE axioms at level k over the box of radius R.
VerificationReport verify_coe(const CoeWitness& w, unsigned k = kDefaultLevel,
                              unsigned radius = kDefaultRadius);

/// Exhaustive equivariance and bijectivity of a conjugacy at level k.
VerificationReport verify_conj(const ConjWitness& w, unsigned k = kDefaultLevel,
                               unsigned radius = kDefaultRadius);

/// Premise check a(g,x) = u(g.x) rho(g) u(x)^{-1} at (k, R).
VerificationReport check_untwist_premise(const CoeWitness& w, const Transfer& u,
                                         const IntMatrix& rho, unsigned k, unsigned radius);

/// Conjugacy x -> u(x)^{-1}.phi(x) with isomorphism rho, built after the
/// premise check passes; throws PreconditionError otherwise.
ConjWitness untwist_to_conjugacy(const CoeWitness& w, const Transfer& u, const IntMatrix& rho,
                                 unsigned k = kDefaultLevel, unsigned radius = kDefaultRadius);

/// Per generator: true when the declared modulus is tight, i.e. the
/// generator map is not constant on the fibres of some level-(modulus-1)
/// cylinder. Generators with modulus 0 report true.
std::vector<bool> locality_audit(const CocycleTable& a);

// Materialized tables, as embedded in certificate files.

/// Values of a point map at `target_level` for every source point at level
/// modulus[target_level], in LevelIndex order. modulus[k] = l(k) for
/// k <= target_level.
struct PointTable {
  SystemSpec source;
  SystemSpec target;
  unsigned target_level = 0;
  std::vector<unsigned> modulus;
  std::vector<std::int64_t> values;  // point count * target rank
};

/// Generator values a(e_i, x) for every source point at `level`.
struct CocycleData {
  SystemSpec source;
  GroupDescriptor target;
  unsigned level = 0;
  std::vector<unsigned> generator_moduli;
  std::vector<std::int64_t> values;  // point count * generators * target rank
};

PointTable materialize(const PointMap& map, unsigned target_level);
CocycleData materialize(const CocycleTable& a);
/// Table-backed map; evaluation lifts a level-l(k) cylinder canonically to
/// the table level, so it is exact for well-defined maps.
PointMap from_table(const PointTable& table);
CocycleTable from_table(const CocycleData& data);

/// Target levels at which verify_coe evaluates phi and psi for level k.
struct CoeLevels {
  unsigned phi_target;
  unsigned psi_target;
};
CoeLevels coe_levels(const CoeWitness& w, unsigned k);

}  // namespace odocoe
