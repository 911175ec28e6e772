// Copyright 2026 The gdm Authors
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

#ifndef GDM_VERDICT_HPP
#define GDM_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "gdm/boundary.hpp"
#include "gdm/dc.hpp"
#include "gdm/model.hpp"

namespace gdm {

// Three-valued no-arbitrage / ACLMM decision engine.
//
// For a finite horizon, NA holds iff an ACLMM exists (c1), the scale is dc
// on the interval interior (c2) and every finite boundary is inaccessible
// or absorbing (c3). For the infinite horizon, NA holds iff an ACLMM
// exists. The engine decides what the diffusion characteristics determine
// and returns Unknown otherwise; the deterministic criteria that would close
// the gap live in companion literature and are deliberately not reproduced.

enum class Horizon { kFinite, kInfinite };

struct HorizonSpec {
  Horizon kind = Horizon::kFinite;
  double T = 1.0;  // meaningful for kFinite
  static HorizonSpec finite(double T) { return {Horizon::kFinite, T}; }
  static HorizonSpec infinite() { return {Horizon::kInfinite, 0.0}; }
};

enum class TriState { kTrue, kFalse, kUnknown };

struct ConditionEvidence {
  // (c1) an ACLMM exists for the market started at the queried x0
  TriState c1_aclmm_exists = TriState::kUnknown;
  std::string c1_witness;
  // (c2) the scale is dc on the interval interior
  TriState c2_scale_dc = TriState::kUnknown;
  std::vector<DcReport> c2_reports;  // one per checked window
  // (c3) finite boundaries inaccessible-or-absorbing
  TriState c3_boundaries_ok = TriState::kUnknown;
  std::vector<BoundaryClassification> c3_classifications;
};

enum class NaStatus { kHolds, kFails, kUnknown };
enum class AclmmStatus { kExists, kNotExists, kUnknown };

enum class StrategyKind { kBuyHoldAfterHit, kPostHitClock };
enum class Direction { kLong, kShort };

/// Certificate that NA fails: an explicit admissible strategy with
/// nonnegative terminal value that is positive with positive probability.
struct ArbitrageDescriptor {
  StrategyKind kind = StrategyKind::kBuyHoldAfterHit;
  double level = 0.0;
  Direction direction = Direction::kLong;
  double admissibility_bound = 0.0;
  std::string rationale;
};

/// Certificate that an ACLMM exists: the companion natural-scale law.
struct CompanionDescriptor {
  std::string speed_description;
  std::vector<double> verified_inaccessible;  // bad points + boundaries
  std::string note;
};

struct Verdict {
  HorizonSpec horizon;
  double x0 = 0.0;
  NaStatus na = NaStatus::kUnknown;
  std::string na_reason;
  AclmmStatus aclmm = AclmmStatus::kUnknown;
  std::string aclmm_reason;
  ConditionEvidence evidence;
  std::optional<ArbitrageDescriptor> certificate;
  std::optional<CompanionDescriptor> companion;
  std::vector<std::string> rule_trace;
};

struct VerdictOptions {
  DcOptions dc;
  BoundaryOptions boundary;
  int c2_windows = 3;  // expanding compacts exhausting the interior
};

/// ACLMM existence at x0 with an optional companion certificate.
std::pair<TriState, std::optional<CompanionDescriptor>> aclmm_decide(
    const DiffusionModel& model, double x0, const HorizonSpec& horizon,
    const VerdictOptions& opts = {});

/// Full three-valued NA verdict with evidence, certificates and rule trace.
Verdict na_verdict(const DiffusionModel& model, double x0,
                   const HorizonSpec& horizon, const VerdictOptions& opts = {});

/// Constructive arbitrage strategy for a failing market, when one of the
/// implemented patterns applies (reflecting or sticky boundary).
std::optional<ArbitrageDescriptor> arbitrage_certificate(
    const DiffusionModel& model, double x0, const HorizonSpec& horizon,
    const ConditionEvidence& evidence);

enum class StatementStatus { kTrue, kFalse, kUnknown, kPartiallyDetermined };

struct TheoremStatement {
  std::string name;
  StatementStatus status = StatementStatus::kUnknown;
  std::string note;
};

struct ConsistencyReport {
  std::vector<TheoremStatement> statements;
  std::vector<std::string> contradictions;  // nonempty indicates a bug
};

/// Evaluates the four equivalent statements derivable from the evidence and
/// flags contradictions (which the equivalences rule out for a correct
/// implementation).
ConsistencyReport theorem_consistency(const ConditionEvidence& evidence,
                                      const HorizonSpec& horizon);

/// Verdict invariant check used by tests and the CLI (exit code 3 on
/// violation): propositional consistency of na/aclmm with the evidence.
std::vector<std::string> verdict_invariant_violations(const Verdict& v);

std::string to_string(NaStatus s);
std::string to_string(AclmmStatus s);
std::string to_string(TriState s);
std::string to_string(StatementStatus s);

}  // namespace gdm

#endif  // GDM_VERDICT_HPP
