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

#include "gdm/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gdm/errors.hpp"

namespace gdm {

namespace {

struct SimpsonState {
  const RealFn& f;
  const QuadratureOptions& opts;
};

double simpson(double fa, double fm, double fb, double h6) {
  return h6 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double b, double fa, double fm,
             double fb, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double h12 = (b - a) / 12.0;
  const double left = simpson(fa, flm, fm, h12);
  const double right = simpson(fm, frm, fb, h12);
  if (!std::isfinite(left) || !std::isfinite(right)) {
    throw QuadratureDiverged("non-finite integrand near [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double delta = left + right - whole;
  if (std::fabs(delta) <=
      15.0 * (st.opts.abs_tol + st.opts.rel_tol * std::fabs(left + right))) {
    return left + right + delta / 15.0;
  }
  if (depth >= st.opts.max_depth) {
    throw QuadratureDiverged("adaptive refinement exhausted near [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return adapt(st, a, m, fa, flm, fm, left, depth + 1) +
         adapt(st, m, b, fm, frm, fb, right, depth + 1);
}

}  // namespace

double integrate_adaptive(const RealFn& f, double a, double b,
                          const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  SimpsonState st{f, opts};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    throw QuadratureDiverged("non-finite integrand sample on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double whole = simpson(fa, fm, fb, (b - a) / 6.0);
  return sign * adapt(st, a, b, fa, fm, fb, whole, 0);
}

MidpointResult integrate_midpoint(const RealFn& f, double a, double b,
                                  const MidpointOptions& opts) {
  MidpointResult res;
  if (!(a < b)) return res;

  int cells = opts.initial_cells;
  double prev = 0.0;
  int growth_streak = 0;
  for (int level = 0; level < opts.max_levels; ++level, cells *= 2) {
    const double h = (b - a) / cells;
    double sum = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double x = a + (i + 0.5) * h;
      const double v = f(x);
      if (!std::isfinite(v)) {
        sum = std::numeric_limits<double>::infinity();
        break;
      }
      sum += v;
    }
    if (std::isfinite(sum)) sum *= h;
    res.levels_used = level + 1;
    if (level > 0) {
      const double grow = (sum - prev) / (std::fabs(prev) + 1e-300);
      growth_streak = (grow >= opts.divergence_growth) ? growth_streak + 1 : 0;
      if (growth_streak >= opts.divergence_levels && sum > opts.blow_up_bound) {
        res.diverged = true;
        res.value = std::numeric_limits<double>::infinity();
        return res;
      }
      if (std::isfinite(sum) &&
          std::fabs(sum - prev) <= opts.rel_tol * (1.0 + std::fabs(sum))) {
        // Midpoint error halves quadratically per level; one Richardson step.
        res.value = sum + (sum - prev) / 3.0;
        return res;
      }
    }
    prev = sum;
  }
  res.value = prev;
  return res;
}

}  // namespace gdm
