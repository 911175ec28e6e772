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

#ifndef GDM_BOUNDARY_HPP
#define GDM_BOUNDARY_HPP

#include <string>
#include <vector>

#include "gdm/model.hpp"

namespace gdm {

enum class Accessibility { kAccessible, kInaccessible };

enum class BehaviorClass {
  kAbsorbing,
  kInstantaneouslyReflecting,
  kStickyReflecting,
  kNotApplicable,  // inaccessible points have no behavior
};

/// One geometric shell of the accessibility integral.
struct ShellRow {
  double inner = 0.0;
  double outer = 0.0;
  double density_part = 0.0;
  double cumulative = 0.0;
};

/// One atom term of the accessibility series, ordered approaching the point.
struct AtomTermRow {
  double location = 0.0;
  double mass = 0.0;
  double term = 0.0;         // |s(x) - s(b)| * mass
  double partial_sum = 0.0;  // running sum of terms
};

struct AccessibilityEvidence {
  std::vector<ShellRow> shells;
  std::vector<AtomTermRow> atom_terms;
  bool density_diverged = false;
  bool atoms_diverged = false;
};

struct BoundaryClassification {
  double point = 0.0;  // may be +-inf
  Accessibility accessibility = Accessibility::kInaccessible;
  BehaviorClass behavior = BehaviorClass::kNotApplicable;
  double sticky_mass = 0.0;
  double integral_estimate = 0.0;  // +inf when divergent
  double scale_limit = 0.0;        // s(b+-), +-inf possible
  AccessibilityEvidence evidence;
  std::string note;
};

struct BoundaryOptions {
  int max_shells = 40;
  // density part: mean tail ratio at or above this marks divergence
  double shell_ratio_divergent = 0.90;
  // atom part: Cauchy-condensation block ratio at or above marks divergence
  double block_ratio_divergent = 0.70;
  double blow_up_bound = 1e6;
};

enum class BoundarySide { kLower, kUpper };

/// Feller-style accessibility in scale coordinates: b is inaccessible
/// whenever |s(b+-)| = inf, otherwise decided by the integral
/// A = int |s(x) - s(b)| m(dx) over a one-sided neighborhood of b.
/// Behavior at an accessible point comes from the declaration or the atom
/// at b; throws NeedsDeclaration when neither determines it.
BoundaryClassification classify_boundary(const DiffusionModel& model,
                                         BoundarySide side,
                                         const BoundaryOptions& opts = {});

enum class ApproachSide { kAbove, kBelow };

struct InteriorAccessibility {
  Accessibility verdict = Accessibility::kInaccessible;
  double integral_estimate = 0.0;
  AccessibilityEvidence evidence;
};

/// Accessibility of an interior point c for a natural-scale diffusion with
/// speed measure `speed`, approached from the side of x0: evaluates
/// int |x - c| m(dx) over the one-sided neighborhood between c and x0,
/// with the atom series summed explicitly in approach order.
InteriorAccessibility interior_point_accessibility(
    const SpeedMeasure& speed, double c, ApproachSide from_side, double x0,
    const BoundaryOptions& opts = {});

}  // namespace gdm

#endif  // GDM_BOUNDARY_HPP
