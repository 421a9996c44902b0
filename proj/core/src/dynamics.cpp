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

#include "odocoe/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "odocoe/error.hpp"

namespace odocoe {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

constexpr std::int64_t kModulusCeiling = std::int64_t{1} << 62;

}  // namespace

bool GroupDescriptor::is_free() const {
  for (auto n : moduli) {
    if (n != 0) return false;
  }
  return true;
}

GroupElement GroupDescriptor::generator(std::size_t i) const {
  GroupElement g = identity();
  g.at(i) = 1;
  return normalize(std::move(g));
}

GroupElement GroupDescriptor::normalize(GroupElement g) const {
  if (g.size() != rank()) throw PreconditionError("group element has wrong rank");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (moduli[i] != 0) g[i] = floor_mod(g[i], moduli[i]);
  }
  return g;
}

GroupElement GroupDescriptor::add(const GroupElement& a, const GroupElement& b) const {
  if (a.size() != rank() || b.size() != rank()) throw PreconditionError("group element has wrong rank");
  GroupElement out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = a[i] + b[i];
  return normalize(std::move(out));
}

GroupElement GroupDescriptor::sub(const GroupElement& a, const GroupElement& b) const {
  if (a.size() != rank() || b.size() != rank()) throw PreconditionError("group element has wrong rank");
  GroupElement out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = a[i] - b[i];
  return normalize(std::move(out));
}

GroupElement GroupDescriptor::negate(const GroupElement& a) const {
  if (a.size() != rank()) throw PreconditionError("group element has wrong rank");
  GroupElement out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = -a[i];
  return normalize(std::move(out));
}

bool GroupDescriptor::equal(const GroupElement& a, const GroupElement& b) const {
  return normalize(a) == normalize(b);
}

std::string GroupDescriptor::to_string() const {
  if (moduli.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i) out += " x ";
    out += moduli[i] == 0 ? "Z" : "Z/" + std::to_string(moduli[i]);
  }
  return out;
}

std::string to_string(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g[i]);
  }
  return out + ")";
}

Factor Factor::cyclic(std::int64_t n) {
  if (n < 1) throw PreconditionError("cyclic factor order must be >= 1");
  Factor f;
  f.kind_ = Kind::Cyclic;
  f.n_ = n;
  return f;
}

Factor Factor::odometer(SupernaturalNumber M) {
  if (!M.is_supernatural()) {
    throw PreconditionError("odometer needs a supernatural number, got " + M.to_string());
  }
  Factor f;
  f.kind_ = Kind::Odometer;
  f.M_ = std::move(M);
  // m_k = prod_p p^{min(v_p, k)}, tabulated until it stabilizes or overflows.
  for (unsigned k = 0;; ++k) {
    __int128 m = 1;
    bool overflow = false;
    bool saturated = true;
    for (const auto& [p, e] : f.M_.factors()) {
      Exponent capped = min(e, Exponent(static_cast<long>(k)));
      if (capped < e) saturated = false;
      unsigned long power = capped.value().get_ui();
      for (unsigned long i = 0; i < power && !overflow; ++i) {
        m *= static_cast<__int128>(p);
        if (m > kModulusCeiling) overflow = true;
      }
    }
    if (overflow) break;
    f.tower_.push_back(static_cast<std::int64_t>(m));
    if (saturated) break;  // cannot happen for supernatural M; kept for safety of the loop
  }
  return f;
}

std::int64_t Factor::cyclic_order() const {
  if (!is_cyclic()) throw PreconditionError("odometer factor has no cyclic order");
  return n_;
}

const SupernaturalNumber& Factor::supernatural() const {
  if (is_cyclic()) throw PreconditionError("cyclic factor has no supernatural number");
  return M_;
}

std::int64_t Factor::level_modulus(unsigned k) const {
  if (is_cyclic()) return n_;
  if (k >= tower_.size()) {
    throw std::overflow_error("level " + std::to_string(k) + " modulus of " + M_.to_string() +
                              " exceeds 2^62");
  }
  return tower_[k];
}

std::string Factor::to_string() const {
  return is_cyclic() ? "cyc:" + std::to_string(n_) : "odo:" + M_.to_string();
}

bool operator==(const Factor& a, const Factor& b) {
  if (a.kind_ != b.kind_) return false;
  return a.is_cyclic() ? a.n_ == b.n_ : a.M_ == b.M_;
}

std::int64_t level_modulus(const Factor& f, unsigned k) { return f.level_modulus(k); }

unsigned min_level_for(const Factor& f, std::int64_t required) {
  if (required < 1) throw PreconditionError("required modulus must be positive");
  if (f.is_cyclic()) {
    if (f.cyclic_order() % required != 0) {
      throw PreconditionError(std::to_string(required) + " does not divide " + f.to_string());
    }
    return 0;
  }
  // the first level whose modulus is a multiple of `required`
  for (unsigned k = 0; k < 64; ++k) {
    std::int64_t mk = 0;
    try {
      mk = f.level_modulus(k);
    } catch (const std::overflow_error&) {
      break;
    }
    if (mk % required == 0) return k;
  }
  SupernaturalNumber need = SupernaturalNumber::from_natural(static_cast<std::uint64_t>(required));
  if (!divides(need, f.supernatural())) {
    throw PreconditionError(std::to_string(required) + " does not divide " + f.to_string());
  }
  unsigned level = 0;
  for (const auto& [p, e] : need.factors()) {
    level = std::max(level, static_cast<unsigned>(e.value().get_ui()));
  }
  return level;
}

SystemSpec::SystemSpec(std::vector<Factor> factors) : factors_(std::move(factors)) {}

SystemSpec SystemSpec::odometers(std::span<const SupernaturalNumber> Ms) {
  std::vector<Factor> fs;
  fs.reserve(Ms.size());
  for (const auto& M : Ms) fs.push_back(Factor::odometer(M));
  return SystemSpec(std::move(fs));
}

GroupDescriptor SystemSpec::acting_group() const {
  GroupDescriptor g;
  for (const auto& f : factors_) g.moduli.push_back(f.group_modulus());
  return g;
}

std::vector<std::int64_t> SystemSpec::moduli(unsigned k) const {
  std::vector<std::int64_t> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.level_modulus(k));
  return out;
}

std::uint64_t SystemSpec::point_count(unsigned k) const {
  __int128 total = 1;
  for (const auto& f : factors_) {
    total *= f.level_modulus(k);
    if (total > kModulusCeiling) throw std::overflow_error("point count exceeds 2^62");
  }
  return static_cast<std::uint64_t>(total);
}

SystemSpec SystemSpec::concat(const SystemSpec& other) const {
  std::vector<Factor> fs = factors_;
  fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
  return SystemSpec(std::move(fs));
}

std::string SystemSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ",";
    out += factors_[i].to_string();
  }
  return out;
}

SystemSpec parse_system_spec(std::string_view text) {
  std::vector<Factor> fs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                               : comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
      item.remove_prefix(1);
    }
    if (item.empty()) throw ParseError("empty factor in system literal '" + std::string(text) + "'");
    try {
      if (item.starts_with("cyc:")) {
        SupernaturalNumber n = parse_sn(item.substr(4));
        if (n.is_supernatural()) throw ParseError("cyclic order must be finite");
        fs.push_back(Factor::cyclic(n.to_int64()));
      } else {
        if (item.starts_with("odo:")) item.remove_prefix(4);
        SupernaturalNumber M = parse_sn(item);
        if (!M.is_supernatural()) {
          throw ParseError("odometer factor " + M.to_string() + " has no infinite exponent");
        }
        fs.push_back(Factor::odometer(std::move(M)));
      }
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    } catch (const std::overflow_error& e) {
      throw ParseError(e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fs.empty()) throw ParseError("empty system literal");
  return SystemSpec(std::move(fs));
}

std::string to_string(const PointAtLevel& x) {
  std::string out = "L" + std::to_string(x.level) + "(";
  for (std::size_t i = 0; i < x.residues.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.residues[i]);
  }
  return out + ")";
}

void check_point(const SystemSpec& spec, const PointAtLevel& x) {
  if (x.residues.size() != spec.size()) throw PreconditionError("point has wrong number of factors");
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::int64_t m = spec.factor(i).level_modulus(x.level);
    if (x.residues[i] < 0 || x.residues[i] >= m) {
      throw PreconditionError("residue " + std::to_string(x.residues[i]) + " out of range mod " +
                              std::to_string(m));
    }
  }
}

PointAtLevel act(const SystemSpec& spec, const GroupElement& g, const PointAtLevel& x) {
  if (g.size() != spec.size() || x.residues.size() != spec.size()) {
    throw PreconditionError("shape mismatch in act");
  }
  PointAtLevel out{x.level, x.residues};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::int64_t m = spec.factor(i).level_modulus(x.level);
    if (x.residues[i] < 0 || x.residues[i] >= m) {
      throw PreconditionError("residue " + std::to_string(x.residues[i]) + " out of range mod " +
                              std::to_string(m));
    }
    out.residues[i] = floor_mod(x.residues[i] + floor_mod(g[i], m), m);
  }
  return out;
}

PointAtLevel project_to(const SystemSpec& spec, const PointAtLevel& x, unsigned level) {
  if (level > x.level) throw PreconditionError("cannot project upward");
  PointAtLevel out{level, x.residues};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out.residues[i] = x.residues[i] % spec.factor(i).level_modulus(level);
  }
  return out;
}

PointAtLevel project(const SystemSpec& spec, const PointAtLevel& x) {
  if (x.level == 0) throw PreconditionError("level-0 points have no projection");
  return project_to(spec, x, x.level - 1);
}

std::vector<PointAtLevel> enumerate_points(const SystemSpec& spec, unsigned k,
                                           std::uint64_t guard) {
  LevelIndex index(spec, k, guard);
  std::vector<PointAtLevel> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out.push_back(index.point(i));
  return out;
}

std::vector<PointAtLevel> orbit(const SystemSpec& spec, const PointAtLevel& x,
                                const GroupElement& g, std::size_t steps) {
  std::vector<PointAtLevel> out{x};
  for (std::size_t s = 0; s < steps; ++s) out.push_back(act(spec, g, out.back()));
  return out;
}

LevelIndex::LevelIndex(const SystemSpec& spec, unsigned level, std::uint64_t guard)
    : level_(level), moduli_(spec.moduli(level)) {
  std::uint64_t count = spec.point_count(level);
  if (count > guard) {
    throw PreconditionError("level " + std::to_string(level) + " of " + spec.to_string() + " has " +
                            std::to_string(count) + " points, above the guard " +
                            std::to_string(guard));
  }
  size_ = static_cast<std::size_t>(count);
}

std::size_t LevelIndex::index_of(std::span<const std::int64_t> residues) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(residues[i]);
  }
  return idx;
}

std::size_t LevelIndex::index_of_projection(std::span<const std::int64_t> residues) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    idx = idx * static_cast<std::size_t>(moduli_[i]) +
          static_cast<std::size_t>(residues[i] % moduli_[i]);
  }
  return idx;
}

void LevelIndex::residues(std::size_t index, std::span<std::int64_t> out) const {
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(moduli_[i]));
    index /= static_cast<std::size_t>(moduli_[i]);
  }
}

PointAtLevel LevelIndex::point(std::size_t index) const {
  PointAtLevel x{level_, std::vector<std::int64_t>(moduli_.size())};
  residues(index, x.residues);
  return x;
}

}  // namespace odocoe
