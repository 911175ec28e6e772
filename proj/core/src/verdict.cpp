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

#include "gdm/verdict.hpp"

#include <cmath>

#include "gdm/companion.hpp"
#include "gdm/errors.hpp"

namespace gdm {

namespace {

TriState kleene_and(TriState a, TriState b) {
  if (a == TriState::kFalse || b == TriState::kFalse) return TriState::kFalse;
  if (a == TriState::kTrue && b == TriState::kTrue) return TriState::kTrue;
  return TriState::kUnknown;
}

// Expanding compacts that exhaust the interval interior: dc on the interior
// is a per-compact property, so NotDc on any window certifies failure while
// Dc is reported together with the largest window checked.
std::vector<std::pair<double, double>> c2_windows(const StateInterval& itv,
                                                  double x0, int count) {
  std::vector<std::pair<double, double>> out;
  const double l = itv.lower(), r = itv.upper();
  for (int i = 0; i < count; ++i) {
    const double e = std::ldexp(1.0, i);
    double lo, hi;
    if (std::isfinite(l)) {
      lo = l + (x0 - l) / (2.0 * e);
    } else {
      lo = x0 - e;
    }
    if (std::isfinite(r)) {
      hi = r - (r - x0) / (2.0 * e);
    } else {
      hi = x0 + e;
    }
    out.emplace_back(lo, hi);
  }
  return out;
}

struct Conditions {
  ConditionEvidence evidence;
  std::vector<double> bad_points;
};

Conditions assess_c2_c3(const DiffusionModel& model, double x0,
                        const VerdictOptions& opts) {
  Conditions cond;

  // (c2): dc of the scale on expanding compacts.
  bool any_notdc = false, any_inconclusive = false;
  for (const auto& [lo, hi] : c2_windows(model.interval(), x0, opts.c2_windows)) {
    DcReport rep = dc_check(model.scale(), lo, hi, opts.dc);
    any_notdc |= rep.verdict == DcVerdict::kNotDc;
    any_inconclusive |= rep.verdict == DcVerdict::kInconclusive;
    cond.evidence.c2_reports.push_back(std::move(rep));
    if (any_notdc) break;  // certified failure, no need to grow the window
  }
  cond.evidence.c2_scale_dc = any_notdc ? TriState::kFalse
                              : any_inconclusive ? TriState::kUnknown
                                                 : TriState::kTrue;

  // (c3): finite boundaries inaccessible or absorbing.
  bool c3_ok = true;
  for (BoundarySide side : {BoundarySide::kLower, BoundarySide::kUpper}) {
    BoundaryClassification cls = classify_boundary(model, side, opts.boundary);
    if (std::isfinite(cls.point) &&
        cls.accessibility == Accessibility::kAccessible &&
        cls.behavior != BehaviorClass::kAbsorbing)
      c3_ok = false;
    cond.evidence.c3_classifications.push_back(std::move(cls));
  }
  cond.evidence.c3_boundaries_ok = c3_ok ? TriState::kTrue : TriState::kFalse;

  cond.bad_points = scale_blow_up_points(model);
  return cond;
}

std::pair<TriState, std::optional<CompanionDescriptor>> decide_aclmm(
    const DiffusionModel& model, double x0, const HorizonSpec& horizon,
    const Conditions& cond, const VerdictOptions& opts,
    std::vector<std::string>* trace) {
  const ConditionEvidence& ev = cond.evidence;

  // Natural scale with clean boundaries: the market measure itself is an
  // equivalent local martingale measure.
  if (model.scale().is_natural_scale() &&
      ev.c3_boundaries_ok == TriState::kTrue) {
    if (trace) trace->push_back("aclmm: natural scale, witness is the market measure");
    CompanionDescriptor d;
    d.speed_description = model.speed().describe();
    d.note = "natural scale; the market measure is itself a local martingale measure";
    return {TriState::kTrue, d};
  }

  // Start at a blow-up point of s'_+: no ACLMM can exist there, otherwise
  // existence at every start point would force NA, contradicting the failed
  // regularity of the scale.
  for (double d : cond.bad_points) {
    if (std::fabs(x0 - d) <= 1e-12 * (1.0 + std::fabs(x0))) {
      if (trace)
        trace->push_back(
            "aclmm: start point is a blow-up point of the scale derivative");
      return {TriState::kFalse, std::nullopt};
    }
  }

  // Infinite horizon: NA and ACLMM existence are equivalent, and a failed
  // (c2)/(c3) kills NA for every finite horizon, hence also globally.
  if (horizon.kind == Horizon::kInfinite &&
      (ev.c2_scale_dc == TriState::kFalse ||
       ev.c3_boundaries_ok == TriState::kFalse)) {
    if (trace)
      trace->push_back(
          "aclmm: infinite horizon with failed scale regularity or boundary "
          "condition");
    return {TriState::kFalse, std::nullopt};
  }

  // Companion pattern (finite horizon): if every blow-up point and every
  // accessible non-absorbing boundary is inaccessible for the natural-scale
  // companion diffusion from the start side, the companion law restricted to
  // the horizon is an ACLMM. Pattern rule: it generalizes the worked
  // stress models and requires a nonempty bad set.
  if (horizon.kind == Horizon::kFinite) {
    std::vector<double> must_avoid = cond.bad_points;
    for (const auto& cls : ev.c3_classifications) {
      if (std::isfinite(cls.point) &&
          cls.accessibility == Accessibility::kAccessible &&
          cls.behavior != BehaviorClass::kAbsorbing)
        must_avoid.push_back(cls.point);
    }
    if (!must_avoid.empty()) {
      try {
        const SpeedMeasure comp = companion_speed(model);
        CompanionDescriptor desc;
        desc.speed_description = comp.describe();
        bool all_inaccessible = true;
        for (double c : must_avoid) {
          if (std::fabs(x0 - c) <= 1e-12 * (1.0 + std::fabs(x0))) {
            all_inaccessible = false;
            break;
          }
          const ApproachSide side =
              x0 > c ? ApproachSide::kAbove : ApproachSide::kBelow;
          const InteriorAccessibility acc = interior_point_accessibility(
              comp, c, side, x0, opts.boundary);
          if (acc.verdict != Accessibility::kInaccessible) {
            all_inaccessible = false;
            break;
          }
          desc.verified_inaccessible.push_back(c);
        }
        if (all_inaccessible) {
          desc.note =
              "companion natural-scale law, absorbed at accessible "
              "boundaries; candidate measure verified to avoid all scale "
              "singularities (pattern rule)";
          if (trace)
            trace->push_back(
                "aclmm: companion measure avoids all bad points (pattern rule)");
          return {TriState::kTrue, desc};
        }
      } catch (const AtomAtBlowUp&) {
        // companion not a valid speed measure; pattern inapplicable
      }
    }
  }

  if (trace) trace->push_back("aclmm: undecided by the implemented rules");
  return {TriState::kUnknown, std::nullopt};
}

}  // namespace

std::pair<TriState, std::optional<CompanionDescriptor>> aclmm_decide(
    const DiffusionModel& model, double x0, const HorizonSpec& horizon,
    const VerdictOptions& opts) {
  if (!model.interval().interior_contains(x0)) throw BadStart(x0);
  const Conditions cond = assess_c2_c3(model, x0, opts);
  return decide_aclmm(model, x0, horizon, cond, opts, nullptr);
}

Verdict na_verdict(const DiffusionModel& model, double x0,
                   const HorizonSpec& horizon, const VerdictOptions& opts) {
  if (!model.interval().interior_contains(x0)) throw BadStart(x0);

  Verdict v;
  v.horizon = horizon;
  v.x0 = x0;

  Conditions cond = assess_c2_c3(model, x0, opts);
  auto [c1, companion] = decide_aclmm(model, x0, horizon, cond, opts,
                                      &v.rule_trace);
  cond.evidence.c1_aclmm_exists = c1;
  if (companion) cond.evidence.c1_witness = companion->note;
  v.evidence = std::move(cond.evidence);
  v.companion = std::move(companion);

  const TriState c2 = v.evidence.c2_scale_dc;
  const TriState c3 = v.evidence.c3_boundaries_ok;
  const bool natural = model.scale().is_natural_scale();

  // R1: natural scale with inaccessible-or-absorbing boundaries.
  if (natural && c3 == TriState::kTrue) {
    v.rule_trace.push_back("R1: natural scale and (c3) hold");
    v.na = NaStatus::kHolds;
    v.na_reason = "price is a local martingale under the market measure";
    v.aclmm = AclmmStatus::kExists;
    v.aclmm_reason = "the market measure itself";
    return v;
  }

  // R2: failed scale regularity or boundary condition.
  if (c2 == TriState::kFalse || c3 == TriState::kFalse) {
    v.rule_trace.push_back(c2 == TriState::kFalse
                               ? "R2: scale is not dc on the interior"
                               : "R2: accessible non-absorbing boundary");
    v.na = NaStatus::kFails;
    v.na_reason = c2 == TriState::kFalse
                      ? "scale function fails dc regularity"
                      : "finite boundary is accessible and not absorbing";
    if (horizon.kind == Horizon::kInfinite) {
      v.aclmm = AclmmStatus::kNotExists;
      v.aclmm_reason =
          "infinite horizon: no arbitrage-free extension, NA and ACLMM "
          "existence are equivalent";
    } else {
      v.aclmm = c1 == TriState::kTrue    ? AclmmStatus::kExists
                : c1 == TriState::kFalse ? AclmmStatus::kNotExists
                                         : AclmmStatus::kUnknown;
      v.aclmm_reason = v.evidence.c1_witness;
    }
    v.certificate = arbitrage_certificate(model, x0, horizon, v.evidence);
    return v;
  }

  // R3: all three conditions verified.
  if (c1 == TriState::kTrue && c2 == TriState::kTrue && c3 == TriState::kTrue) {
    v.rule_trace.push_back("R3: (c1), (c2), (c3) all hold");
    v.na = NaStatus::kHolds;
    v.na_reason = "ACLMM exists, scale is dc, boundaries are clean";
    v.aclmm = AclmmStatus::kExists;
    v.aclmm_reason = v.evidence.c1_witness;
    return v;
  }

  // R4: honestly undecided.
  v.rule_trace.push_back("R4: undecided");
  v.na = NaStatus::kUnknown;
  v.na_reason =
      "deterministic NA criteria from the companion literature are not "
      "reproduced here; conditions left undecided";
  v.aclmm = c1 == TriState::kTrue    ? AclmmStatus::kExists
            : c1 == TriState::kFalse ? AclmmStatus::kNotExists
                                     : AclmmStatus::kUnknown;
  v.aclmm_reason = v.evidence.c1_witness;
  return v;
}

std::optional<ArbitrageDescriptor> arbitrage_certificate(
    const DiffusionModel& model, double x0, const HorizonSpec& horizon,
    const ConditionEvidence& evidence) {
  (void)x0;
  (void)horizon;
  for (const auto& cls : evidence.c3_classifications) {
    if (!std::isfinite(cls.point)) continue;
    if (cls.accessibility != Accessibility::kAccessible) continue;
    if (cls.behavior == BehaviorClass::kAbsorbing) continue;
    ArbitrageDescriptor d;
    d.kind = StrategyKind::kBuyHoldAfterHit;
    d.level = cls.point;
    const bool lower = cls.point == model.interval().lower();
    d.direction = lower ? Direction::kLong : Direction::kShort;
    d.admissibility_bound = 0.0;
    d.rationale = lower
                      ? "buy one unit at the first hit of the reflecting lower "
                        "boundary; the position value X - b stays nonnegative"
                      : "sell one unit at the first hit of the reflecting upper "
                        "boundary; the position value b - X stays nonnegative";
    return d;
  }
  return std::nullopt;  // pure scale-regularity failures are non-constructive
}

ConsistencyReport theorem_consistency(const ConditionEvidence& evidence,
                                      const HorizonSpec& horizon) {
  ConsistencyReport rep;
  const TriState c1 = evidence.c1_aclmm_exists;
  const TriState c2 = evidence.c2_scale_dc;
  const TriState c3 = evidence.c3_boundaries_ok;

  auto status_of = [](TriState t) {
    switch (t) {
      case TriState::kTrue: return StatementStatus::kTrue;
      case TriState::kFalse: return StatementStatus::kFalse;
      default: return StatementStatus::kUnknown;
    }
  };

  if (horizon.kind == Horizon::kInfinite) {
    TriState base = c1;
    if (c2 == TriState::kFalse || c3 == TriState::kFalse) {
      if (c1 == TriState::kTrue)
        rep.contradictions.push_back(
            "ACLMM exists at infinite horizon while (c2)/(c3) fail");
      base = TriState::kFalse;
    }
    rep.statements.push_back(
        {"(i) NA holds", status_of(base), "equivalent to (ii)"});
    rep.statements.push_back({"(ii) an ACLMM exists", status_of(base), ""});
    return rep;
  }

  // (c1) in the theorem quantifies over some start point; evidence from a
  // single x0 proves it when positive, but cannot refute it.
  const TriState c1_some = (c1 == TriState::kTrue) ? TriState::kTrue
                                                   : TriState::kUnknown;
  const TriState c_status = kleene_and(c1_some, kleene_and(c2, c3));

  rep.statements.push_back({"(a) NA holds for some start point",
                            status_of(c_status), "via (a) <=> (c)"});
  rep.statements.push_back({"(b) NA holds for all start points",
                            status_of(c_status), "via (b) <=> (c)"});
  rep.statements.push_back(
      {"(c) ACLMM exists for some start, scale dc, boundaries clean",
       status_of(c_status), ""});

  // (d) = (d1: ACLMM for all starts) and (d2 = c3).
  StatementStatus d_status;
  std::string d_note;
  if (c_status == TriState::kTrue) {
    d_status = StatementStatus::kTrue;
    d_note = "via (d) <=> (a)";
  } else if (c1 == TriState::kFalse) {
    d_status = StatementStatus::kFalse;
    d_note = "(d1) fails at the queried start point";
  } else if (c3 == TriState::kFalse) {
    d_status = StatementStatus::kFalse;
    d_note = "(d2) fails";
  } else if (c_status == TriState::kFalse) {
    d_status = StatementStatus::kPartiallyDetermined;
    d_note =
        "(d2) holds and (d1) is not refutable from a single start point; the "
        "equivalence forces (d1) to fail for some other start";
  } else {
    d_status = StatementStatus::kUnknown;
    d_note = "";
  }
  rep.statements.push_back(
      {"(d) ACLMM exists for all starts and boundaries clean", d_status,
       d_note});

  // A decided (c) must never disagree with a decided (d).
  if (c_status == TriState::kTrue && d_status == StatementStatus::kFalse)
    rep.contradictions.push_back("(c) holds while (d) fails");
  return rep;
}

std::vector<std::string> verdict_invariant_violations(const Verdict& v) {
  std::vector<std::string> out;
  const auto& ev = v.evidence;
  if (v.na == NaStatus::kHolds) {
    if (v.aclmm != AclmmStatus::kExists)
      out.push_back("NA holds but no ACLMM reported");
    if (ev.c2_scale_dc == TriState::kFalse)
      out.push_back("NA holds with a non-dc scale");
    if (ev.c3_boundaries_ok == TriState::kFalse)
      out.push_back("NA holds with a bad boundary");
  }
  if (ev.c1_aclmm_exists == TriState::kTrue &&
      ev.c2_scale_dc == TriState::kTrue &&
      ev.c3_boundaries_ok == TriState::kTrue && v.na != NaStatus::kHolds)
    out.push_back("(c1)&(c2)&(c3) hold but NA not concluded");
  if ((ev.c2_scale_dc == TriState::kFalse ||
       ev.c3_boundaries_ok == TriState::kFalse) &&
      v.na != NaStatus::kFails)
    out.push_back("(c2) or (c3) fails but NA not failed");
  if (v.horizon.kind == Horizon::kInfinite && v.na != NaStatus::kUnknown &&
      v.aclmm != AclmmStatus::kUnknown) {
    const bool na_holds = v.na == NaStatus::kHolds;
    const bool aclmm_exists = v.aclmm == AclmmStatus::kExists;
    if (na_holds != aclmm_exists)
      out.push_back("infinite horizon: NA and ACLMM disagree");
  }
  if (v.certificate && v.na != NaStatus::kFails)
    out.push_back("arbitrage certificate attached to a non-failing verdict");
  return out;
}

std::string to_string(NaStatus s) {
  switch (s) {
    case NaStatus::kHolds: return "holds";
    case NaStatus::kFails: return "fails";
    default: return "unknown";
  }
}

std::string to_string(AclmmStatus s) {
  switch (s) {
    case AclmmStatus::kExists: return "exists";
    case AclmmStatus::kNotExists: return "not_exists";
    default: return "unknown";
  }
}

std::string to_string(TriState s) {
  switch (s) {
    case TriState::kTrue: return "true";
    case TriState::kFalse: return "false";
    default: return "unknown";
  }
}

std::string to_string(StatementStatus s) {
  switch (s) {
    case StatementStatus::kTrue: return "true";
    case StatementStatus::kFalse: return "false";
    case StatementStatus::kPartiallyDetermined: return "partially_determined";
    default: return "unknown";
  }
}

}  // namespace gdm
