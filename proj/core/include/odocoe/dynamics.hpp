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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odocoe/supernatural.hpp"

namespace odocoe {

/// Element of a finitely generated abelian group, one integer per factor.
using GroupElement = std::vector<std::int64_t>;

/// prod_i (Z/n_i or Z); a modulus of 0 stands for Z.
struct GroupDescriptor {
  std::vector<std::int64_t> moduli;

  std::size_t rank() const { return moduli.size(); }
  bool is_free() const;
  GroupElement identity() const { return GroupElement(rank(), 0); }
  GroupElement generator(std::size_t i) const;
  /// Reduces torsion coordinates into [0, n).
  GroupElement normalize(GroupElement g) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  bool equal(const GroupElement& a, const GroupElement& b) const;
  std::string to_string() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

std::string to_string(const GroupElement& g);

/// One factor of a product system: the canonical action of Z/n on itself,
/// or the odometer Z acting on Z/M.
class Factor {
 public:
  enum class Kind { Cyclic, Odometer };

  static Factor cyclic(std::int64_t n);
  static Factor odometer(SupernaturalNumber M);

  Kind kind() const { return kind_; }
  bool is_cyclic() const { return kind_ == Kind::Cyclic; }
  std::int64_t cyclic_order() const;
  const SupernaturalNumber& supernatural() const;

  /// Size of the level-k quotient: n for Cyclic(n), and
  /// prod_{p | M} p^{min(v_p(M), k)} for Odometer(M).
  std::int64_t level_modulus(unsigned k) const;
  /// Modulus of the acting group: n for Cyclic(n), 0 (Z) for odometers.
  std::int64_t group_modulus() const { return is_cyclic() ? cyclic_order() : 0; }

  std::string to_string() const;
  friend bool operator==(const Factor& a, const Factor& b);

 private:
  Kind kind_ = Kind::Cyclic;
  std::int64_t n_ = 1;
  SupernaturalNumber M_;
  std::vector<std::int64_t> tower_;  // level moduli until they overflow
};

std::int64_t level_modulus(const Factor& f, unsigned k);

/// Least level s with `required` | level_modulus(f, s); throws
/// PreconditionError when no level qualifies.
unsigned min_level_for(const Factor& f, std::int64_t required);

class SystemSpec {
 public:
  SystemSpec() = default;
  explicit SystemSpec(std::vector<Factor> factors);
  static SystemSpec odometers(std::span<const SupernaturalNumber> Ms);

  std::size_t size() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }

  GroupDescriptor acting_group() const;
  std::vector<std::int64_t> moduli(unsigned k) const;
  /// Number of level-k points; throws std::overflow_error past 2^62.
  std::uint64_t point_count(unsigned k) const;

  SystemSpec concat(const SystemSpec& other) const;
  std::string to_string() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Comma-separated factors: `odo:<expr>`, `cyc:<nat>`, or a bare
/// supernatural expression (read as an odometer).
SystemSpec parse_system_spec(std::string_view text);

/// A level-k cylinder, identified with its residue vector.
struct PointAtLevel {
  unsigned level = 0;
  std::vector<std::int64_t> residues;

  friend bool operator==(const PointAtLevel&, const PointAtLevel&) = default;
};

std::string to_string(const PointAtLevel& x);

/// Coordinate-wise translation mod the level moduli of x's level.
PointAtLevel act(const SystemSpec& spec, const GroupElement& g, const PointAtLevel& x);
/// Reduction to level k-1.
PointAtLevel project(const SystemSpec& spec, const PointAtLevel& x);
PointAtLevel project_to(const SystemSpec& spec, const PointAtLevel& x, unsigned level);
/// Checks the shape and residue bounds of x; throws PreconditionError.
void check_point(const SystemSpec& spec, const PointAtLevel& x);

inline constexpr std::uint64_t kDefaultEnumerationGuard = 1'000'000;

/// All level-k points in lexicographic residue order.
std::vector<PointAtLevel> enumerate_points(const SystemSpec& spec, unsigned k,
                                           std::uint64_t guard = kDefaultEnumerationGuard);
/// x, g.x, ..., g^steps.x
std::vector<PointAtLevel> orbit(const SystemSpec& spec, const PointAtLevel& x,
                                const GroupElement& g, std::size_t steps);

/// Mixed-radix numbering of the level-k points of a system, consistent with
/// enumerate_points.
class LevelIndex {
 public:
  LevelIndex(const SystemSpec& spec, unsigned level,
             std::uint64_t guard = kDefaultEnumerationGuard);

  unsigned level() const { return level_; }
  std::size_t size() const { return size_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }

  std::size_t index_of(std::span<const std::int64_t> residues) const;
  /// Index of the projection of arbitrary-level residues to this level.
  std::size_t index_of_projection(std::span<const std::int64_t> residues) const;
  PointAtLevel point(std::size_t index) const;
  void residues(std::size_t index, std::span<std::int64_t> out) const;

 private:
  unsigned level_;
  std::vector<std::int64_t> moduli_;
  std::size_t size_ = 1;
};

}  // namespace odocoe
