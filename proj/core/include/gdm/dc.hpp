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

#ifndef GDM_DC_HPP
#define GDM_DC_HPP

#include <string>
#include <vector>

#include "gdm/scale.hpp"

namespace gdm {

// Numerical analysis of the difference-of-convex-functions property.
//
// A function is dc on a compact window iff its one-sided derivative has
// bounded variation there, which the scheme probes through the total
// variation of secant slopes on nested dyadic grids. Slope TV can only grow
// under refinement, so growth that keeps a geometric rate is a divergence
// certificate (NotDc); stabilization is a finite-resolution judgment (Dc).
// The certification is one-sided sound by construction.

enum class DcVerdict { kDc, kNotDc, kInconclusive };

struct DcLevel {
  double grid_step = 0.0;
  double slope_total_variation = 0.0;
};

struct DcReport {
  std::string target;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<DcLevel> levels;  // coarse to fine
  DcVerdict verdict = DcVerdict::kInconclusive;
  // min / max TV growth ratio over the finest `consecutive` level pairs
  double divergence_ratio = 1.0;
  double max_growth_ratio = 1.0;
};

struct DcOptions {
  int levels = 13;
  int initial_cells = 8;
  double notdc_ratio = 1.50;  // min ratio at or above => NotDc
  double dc_ratio = 1.01;     // max ratio at or below => Dc
  int consecutive = 3;
};

DcReport dc_check(const ScaleFunction& s, double window_lo, double window_hi,
                  const DcOptions& opts = {});

enum class Side { kLeft, kRight };

/// Numeric one-sided derivative via difference quotients over a geometric
/// h-sequence with last-three Richardson extrapolation. `blow_up` marks
/// quotients that keep growing geometrically instead of settling.
struct DerivativeEstimate {
  double value = 0.0;
  bool blow_up = false;
  std::vector<double> quotients;
};

struct DerivativeOptions {
  double h0_rel = 1e-2;  // h0 = h0_rel * (1 + |x|), scaled into the window
  int halvings = 20;
  double cauchy_tol = 1e-6;
  // blow-up: a run of `grow_run` growing quotients with total growth >= grow_factor
  int grow_run = 5;
  double grow_factor = 8.0;
};

DerivativeEstimate one_sided_derivative(const ScaleFunction& s, double x,
                                        Side side,
                                        const DerivativeOptions& opts = {});

/// Signed measure on grid cells: masses[i] = g'_-(x_{i+1}) - g'_-(x_i), so
/// the mass over [a, b) telescopes to g'_-(b) - g'_-(a).
struct SignedGridMeasure {
  std::vector<double> breakpoints;  // size n+1
  std::vector<double> masses;       // size n
  double total_variation() const;
  double mass(double a, double b) const;  // sum over cells inside [a, b)
};

/// Requires g certified-or-judged dc on the grid span; throws NotDcError on a
/// NotDc certificate. Left derivatives come from the scale variants directly.
SignedGridMeasure second_derivative_measure(const ScaleFunction& g,
                                            const std::vector<double>& grid);

}  // namespace gdm

#endif  // GDM_DC_HPP
