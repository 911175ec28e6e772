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

#include "gdm/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gdm/errors.hpp"
#include "gdm/quadrature.hpp"

namespace gdm {

namespace {

// |s(x) - s(b)| against the speed measure, integrated over geometric shells
// closing in on `point` from one side, plus the atom series in approach
// order. `sbar` must be the nonnegative scale distance to the point.
AccessibilityEvidence one_sided_integral(
    const std::function<double(double)>& sbar, const SpeedMeasure& speed,
    double point, bool from_above, double span, const BoundaryOptions& opts,
    double* estimate, bool* diverged) {
  AccessibilityEvidence ev;
  const double dir = from_above ? 1.0 : -1.0;

  // Density part over shells (point + span*2^-k-1, point + span*2^-k].
  MidpointOptions mo;
  mo.initial_cells = 8;
  mo.max_levels = 14;
  mo.rel_tol = 1e-8;
  // The scale distance can underflow to an exact 0 right where the density
  // blows up (coefficient scales that flatten double-exponentially). The
  // product is then below the resolution of the scale map: count it as 0 and
  // let the resolved shells decide, rather than poisoning the sum with 0*inf.
  auto integrand = [&](double x) {
    const double sv = sbar(x);
    if (sv == 0.0) return 0.0;
    return sv * speed.density(x);
  };
  double cum = 0.0;
  bool saw_blow_up = false;
  std::vector<double> contributions;
  for (int k = 0; k < opts.max_shells; ++k) {
    const double outer = point + dir * std::ldexp(span, -k);
    const double inner = point + dir * std::ldexp(span, -k - 1);
    double lo = std::min(inner, outer), hi = std::max(inner, outer);
    const MidpointResult q = integrate_midpoint(integrand, lo, hi, mo);
    double part = q.value;
    if (q.diverged) {
      saw_blow_up = true;
      part = opts.blow_up_bound;
    }
    cum += part;
    contributions.push_back(part);
    ev.shells.push_back({inner, outer, part, cum});
    if (cum > opts.blow_up_bound) {
      saw_blow_up = true;
      break;
    }
    // Early stop once the tail is resolved.
    if (k >= 6 && part <= 1e-15 * (cum + 1e-300) &&
        contributions[size_t(k) - 1] <= 1e-15 * (cum + 1e-300))
      break;
  }
  bool density_diverged = saw_blow_up;
  if (!density_diverged && contributions.size() >= 6) {
    // Mean decay ratio over the resolved tail; geometric decay means the
    // remaining shells cannot change convergence.
    double ratio_sum = 0.0;
    int ratio_n = 0;
    const size_t n = contributions.size();
    for (size_t i = n - 5; i < n; ++i) {
      const double prev = contributions[i - 1];
      if (prev > 1e-300) {
        ratio_sum += contributions[i] / prev;
        ++ratio_n;
      }
    }
    if (ratio_n > 0 && ratio_sum / ratio_n >= opts.shell_ratio_divergent &&
        cum > 1e-12)
      density_diverged = true;
  }
  ev.density_diverged = density_diverged;

  // Atom series, enumerated approaching the point.
  std::vector<SpeedAtom> side_atoms;
  for (const auto& atom : speed.atoms()) {
    const double d = dir * (atom.location - point);
    if (d > 0.0 && d < span) side_atoms.push_back(atom);
  }
  std::sort(side_atoms.begin(), side_atoms.end(),
            [&](const SpeedAtom& a, const SpeedAtom& b) {
              return std::fabs(a.location - point) >
                     std::fabs(b.location - point);
            });
  double atom_sum = 0.0;
  bool atoms_diverged = false;
  for (const auto& atom : side_atoms) {
    const double term = sbar(atom.location) * atom.mass;
    atom_sum += term;
    ev.atom_terms.push_back({atom.location, atom.mass, term, atom_sum});
    if (!std::isfinite(term) || atom_sum > opts.blow_up_bound) {
      atoms_diverged = true;
      break;
    }
  }
  if (!atoms_diverged && ev.atom_terms.size() >= 4) {
    // Cauchy condensation: block j collects 2^(j-1) consecutive terms in
    // approach order; the series converges iff the block sums decay
    // geometrically. A trailing block that did not fill its width carries no
    // signal and is dropped.
    std::vector<double> blocks;
    size_t idx = 0, width = 1;
    while (idx < ev.atom_terms.size()) {
      double b = 0.0;
      size_t got = 0;
      for (; got < width && idx < ev.atom_terms.size(); ++got, ++idx)
        b += ev.atom_terms[idx].term;
      if (got == width) blocks.push_back(b);
      width *= 2;
    }
    int high_ratios = 0;
    for (size_t j = blocks.size() >= 3 ? blocks.size() - 2 : 1;
         j < blocks.size(); ++j) {
      if (blocks[j - 1] > 1e-300 &&
          blocks[j] / blocks[j - 1] >= opts.block_ratio_divergent)
        ++high_ratios;
    }
    if (blocks.size() >= 3 && high_ratios >= 2) atoms_diverged = true;
  }
  ev.atoms_diverged = atoms_diverged;

  *diverged = density_diverged || atoms_diverged;
  *estimate = *diverged ? kInf : cum + atom_sum;
  return ev;
}

}  // namespace

BoundaryClassification classify_boundary(const DiffusionModel& model,
                                         BoundarySide side,
                                         const BoundaryOptions& opts) {
  const bool lower = (side == BoundarySide::kLower);
  const double b = lower ? model.interval().lower() : model.interval().upper();
  const ScaleFunction& s = model.scale();

  BoundaryClassification out;
  out.point = b;

  const double s_lim = s.limit_at_boundary(b, lower);
  out.scale_limit = s_lim;
  if (std::isinf(s_lim)) {
    out.accessibility = Accessibility::kInaccessible;
    out.behavior = BehaviorClass::kNotApplicable;
    out.integral_estimate = kInf;
    out.note = "scale image of the boundary is infinite";
    return out;
  }

  // Reference interior point: halfway to the other endpoint when finite,
  // else one unit inside (or one unit out along a finite scale image of an
  // infinite endpoint).
  const double other = lower ? model.interval().upper() : model.interval().lower();
  double c;
  if (std::isfinite(b)) {
    c = std::isfinite(other) ? 0.5 * (b + other) : b + (lower ? 1.0 : -1.0);
  } else {
    c = std::isfinite(other) ? other + (lower ? -1.0 : 1.0) : (lower ? -1.0 : 1.0);
  }

  double estimate = 0.0;
  bool diverged = false;
  if (std::isfinite(b)) {
    auto sbar = [&](double x) { return std::fabs(s.value(x) - s_lim); };
    out.evidence = one_sided_integral(sbar, model.speed(), b, lower,
                                      std::fabs(c - b), opts, &estimate,
                                      &diverged);
  } else {
    // Infinite endpoint with finite scale image: shells in scale distance,
    // walked through the inverse map.
    const double y_c = s.value(c);
    auto sbar = [&](double x) { return std::fabs(s.value(x) - s_lim); };
    // Transform to the scale axis: integrate |y - s_lim| against the image
    // measure by shelling x = s^{-1}(y).
    const double span_y = std::fabs(y_c - s_lim);
    const double dir = lower ? 1.0 : -1.0;
    MidpointOptions mo;
    mo.initial_cells = 8;
    mo.max_levels = 14;
    mo.rel_tol = 1e-8;
    double cum = 0.0;
    std::vector<double> contributions;
    bool blow = false;
    for (int k = 0; k < opts.max_shells; ++k) {
      const double y_outer = s_lim + dir * std::ldexp(span_y, -k);
      const double y_inner = s_lim + dir * std::ldexp(span_y, -k - 1);
      const double x_outer = s.inverse(y_outer);
      const double x_inner = s.inverse(y_inner);
      double lo = std::min(x_inner, x_outer), hi = std::max(x_inner, x_outer);
      const MidpointResult q = integrate_midpoint(
          [&](double x) {
            const double sv = sbar(x);
            return sv == 0.0 ? 0.0 : sv * model.speed().density(x);
          },
          lo, hi, mo);
      double part = q.diverged ? opts.blow_up_bound : q.value;
      // Atoms inside this shell.
      for (const auto& atom : model.speed().atoms()) {
        if (atom.location > lo && atom.location <= hi)
          part += sbar(atom.location) * atom.mass;
      }
      cum += part;
      contributions.push_back(part);
      out.evidence.shells.push_back({x_inner, x_outer, part, cum});
      if (q.diverged || cum > opts.blow_up_bound) {
        blow = true;
        break;
      }
      if (k >= 6 && part <= 1e-15 * (cum + 1e-300)) break;
    }
    diverged = blow;
    if (!diverged && contributions.size() >= 6) {
      double rs = 0.0;
      int rn = 0;
      for (size_t i = contributions.size() - 5; i < contributions.size(); ++i) {
        if (contributions[i - 1] > 1e-300) {
          rs += contributions[i] / contributions[i - 1];
          ++rn;
        }
      }
      if (rn > 0 && rs / rn >= opts.shell_ratio_divergent && cum > 1e-12)
        diverged = true;
    }
    out.evidence.density_diverged = diverged;
    estimate = diverged ? kInf : cum;
  }

  out.integral_estimate = estimate;
  if (diverged) {
    out.accessibility = Accessibility::kInaccessible;
    out.behavior = BehaviorClass::kNotApplicable;
    out.note = "accessibility integral diverges";
    return out;
  }

  out.accessibility = Accessibility::kAccessible;
  if (!std::isfinite(b)) {
    // An accessible infinite endpoint (explosion) traps the path there.
    out.behavior = BehaviorClass::kAbsorbing;
    out.note = "accessible infinite endpoint; treated as absorbing";
    return out;
  }

  const DeclaredBoundary& decl = model.declared_boundary(!lower);
  switch (decl.kind) {
    case BoundaryBehaviorKind::kAbsorbing:
      out.behavior = BehaviorClass::kAbsorbing;
      return out;
    case BoundaryBehaviorKind::kInstantaneouslyReflecting:
      out.behavior = BehaviorClass::kInstantaneouslyReflecting;
      return out;
    case BoundaryBehaviorKind::kStickyReflecting:
      out.behavior = BehaviorClass::kStickyReflecting;
      out.sticky_mass = decl.sticky_mass;
      return out;
    case BoundaryBehaviorKind::kUnspecified:
      break;
  }
  if (const auto atom = model.speed().atom_mass_at(b)) {
    if (std::isinf(*atom)) {
      out.behavior = BehaviorClass::kAbsorbing;
      out.note = "infinite speed atom at the boundary";
    } else {
      out.behavior = BehaviorClass::kStickyReflecting;
      out.sticky_mass = *atom;
      out.note = "behavior derived from the boundary speed atom";
    }
    return out;
  }
  throw NeedsDeclaration(
      "accessible boundary at " + std::to_string(b) + " for model '" +
      model.label() + "' carries no declaration and no speed atom");
}

InteriorAccessibility interior_point_accessibility(
    const SpeedMeasure& speed, double c, ApproachSide from_side, double x0,
    const BoundaryOptions& opts) {
  const bool from_above = (from_side == ApproachSide::kAbove);
  if ((from_above && !(x0 > c)) || (!from_above && !(x0 < c)))
    throw BadParam("x0 must lie on the declared side of c");

  InteriorAccessibility out;
  auto sbar = [c](double x) { return std::fabs(x - c); };
  double estimate = 0.0;
  bool diverged = false;
  out.evidence = one_sided_integral(sbar, speed, c, from_above,
                                    std::fabs(x0 - c), opts, &estimate,
                                    &diverged);
  out.integral_estimate = estimate;
  out.verdict = diverged ? Accessibility::kInaccessible
                         : Accessibility::kAccessible;
  return out;
}

}  // namespace gdm
