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

// Certificate files: canonical-key-order JSON carrying the inputs, the
// decision payload, optional materialized witness tables and a SHA-256 hash
// of everything else.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odocoe/cocycle.hpp"
#include "odocoe/decide.hpp"

namespace odocoe {

using Json = nlohmann::json;

inline constexpr const char* kCertificateFormat = "odocoe-certificate";
inline constexpr int kCertificateVersion = 1;

std::string tool_version();

Json to_json(const CoeDecision& d);
Json to_json(const ConjDecision& d);
Json to_json(const KInvariant& k);
Json to_json(const CounterexampleReport& r);
Json to_json(const VerificationReport& r);
Json to_json(const PointTable& t);
Json to_json(const CocycleData& d);
Json to_json(const IntMatrix& m);

PointTable point_table_from_json(const Json& j);
CocycleData cocycle_data_from_json(const Json& j);
IntMatrix matrix_from_json(const Json& j);

/// Hex SHA-256 of the compact dump of `cert` without its "hash" member.
std::string content_hash(const Json& cert);

/// Materialized witness at the levels verify_coe uses for `level`.
Json witness_to_json(const CoeWitness& w, unsigned level, unsigned radius);
Json witness_to_json(const ConjWitness& w, unsigned level, unsigned radius);
CoeWitness coe_witness_from_json(const Json& j);
ConjWitness conj_witness_from_json(const Json& j);

Json coe_certificate(std::span<const SupernaturalNumber> Ms, std::span<const SupernaturalNumber> Ns,
                     const CoeDecision& d, const CoeWitness* w = nullptr,
                     unsigned level = kDefaultLevel, unsigned radius = kDefaultRadius);
Json conj_certificate(std::span<const SupernaturalNumber> Ms, std::span<const SupernaturalNumber> Ns,
                      const ConjDecision& d, const ConjWitness* w = nullptr,
                      unsigned level = kDefaultLevel, unsigned radius = kDefaultRadius);
/// Witness between two explicit systems, without a decision.
Json witness_certificate(const CoeWitness& w, unsigned level = kDefaultLevel,
                         unsigned radius = kDefaultRadius);
Json counterexample_certificate(const CounterexampleReport& r);

struct CertificateCheck {
  bool passed = false;
  std::vector<std::string> lines;
  std::optional<VerificationReport> report;
};

/// Re-checks a certificate: hash, decision (recomputed from the inputs and
/// its identities re-verified) and any embedded witness at (level, radius),
/// defaulting to the embedded values. Throws ParseError on malformed files.
CertificateCheck verify_certificate(const Json& cert, std::optional<unsigned> level = std::nullopt,
                                    std::optional<unsigned> radius = std::nullopt);

}  // namespace odocoe
