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

// Explicit witnesses for positive decisions. Every constructor re-verifies
// its output at level 4, radius 6 and throws VerificationError instead of
// returning an unverified object.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "odocoe/cocycle.hpp"
#include "odocoe/decide.hpp"

namespace odocoe {

/// The carry of g + c in Z/l x lZ for a residue c in [0, l): ([j], h) with
/// j = g mod l, h = g - j, plus l when c + j wraps past l - 1.
std::pair<std::int64_t, std::int64_t> carry_split(std::int64_t l, std::int64_t g, std::int64_t c);

/// alpha_{lL} -> lambda_l x alpha_L, x -> (x mod l, (x - x mod l) / l).
/// The cocycle is a(1, x) = ([1], 0) for x mod l < l - 1 and ([1], 1)
/// otherwise; b(([1], 0), (c, y)) = 1 for c < l - 1 and 1 - l otherwise,
/// b((0, 1), y) = l. l = 1 gives the identity on alpha_L.
CoeWitness build_basic_coe(std::int64_t l, const SupernaturalNumber& L);

/// prod Z/ns_i -> prod Z/target_j through mixed-radix enumeration of both
/// sides; the cocycles are the differences a(g, x) = phi(g.x) - phi(x).
CoeWitness build_finite_coe(std::span<const std::int64_t> ns, std::span<const std::int64_t> target);

/// Conjugacy assembled blockwise from the conjugators of a positive decision.
ConjWitness build_conj_witness(std::span<const SupernaturalNumber> Ms,
                               std::span<const SupernaturalNumber> Ns, const ConjDecision& d);

/// Orbit equivalence assembled from basic splittings, a finite merge of the
/// cyclic parts and the reverse construction toward Ns.
CoeWitness build_coe_witness(std::span<const SupernaturalNumber> Ms,
                             std::span<const SupernaturalNumber> Ns, const CoeDecision& d);

}  // namespace odocoe
