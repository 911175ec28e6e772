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

#ifndef GDM_QUADRATURE_HPP
#define GDM_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace gdm {

using RealFn = std::function<double(double)>;

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 48;
};

/// Adaptive Simpson quadrature for smooth integrands on a finite interval.
/// Throws QuadratureDiverged when the recursion exhausts its depth without
/// meeting the tolerance (the local-integrability check of the
/// Engelbert-Schmidt construction).
double integrate_adaptive(const RealFn& f, double a, double b,
                          const QuadratureOptions& opts = {});

/// Outcome of the refining midpoint scheme. `diverged` means the partial
/// integrals kept growing across refinements past the blow-up bound;
/// divergence is a value, not an error.
struct MidpointResult {
  double value = 0.0;
  bool diverged = false;
  int levels_used = 0;
};

struct MidpointOptions {
  double rel_tol = 1e-9;
  int initial_cells = 16;
  int max_levels = 22;
  // Divergence rule: declare +inf once `divergence_levels` successive
  // refinements each grow the composite by at least `divergence_growth`
  // and the running total exceeds `blow_up_bound`.
  double divergence_growth = 0.10;
  int divergence_levels = 3;
  double blow_up_bound = 1e6;
};

/// Composite midpoint rule on successively halved cells. Never evaluates the
/// integrand at the interval endpoints, so endpoint singularities are
/// integrable-or-flagged rather than fatal.
MidpointResult integrate_midpoint(const RealFn& f, double a, double b,
                                  const MidpointOptions& opts = {});

}  // namespace gdm

#endif  // GDM_QUADRATURE_HPP
