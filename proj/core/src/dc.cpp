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

#include "gdm/dc.hpp"

#include <algorithm>
#include <cmath>

#include "gdm/errors.hpp"

namespace gdm {

DcReport dc_check(const ScaleFunction& s, double window_lo, double window_hi,
                  const DcOptions& opts) {
  if (!(window_lo < window_hi)) throw BadParam("dc window needs lo < hi");
  if (!s.domain().interior_contains(window_lo) ||
      !s.domain().interior_contains(window_hi))
    throw BadParam("dc window must lie compactly inside the domain interior");
  if (opts.levels < 4) throw BadParam("dc_check needs at least 4 levels");

  DcReport rep;
  rep.target = s.describe();
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;

  const double span = window_hi - window_lo;
  double slope_scale = std::fabs(s.increment(window_lo, window_hi)) / span;
  if (!(slope_scale > 0.0)) slope_scale = 1.0;

  int cells = opts.initial_cells;
  for (int level = 0; level < opts.levels; ++level, cells *= 2) {
    std::vector<double> xs(size_t(cells) + 1);
    for (int i = 0; i <= cells; ++i)
      xs[size_t(i)] = window_lo + span * double(i) / double(cells);
    const std::vector<double> vs = s.values_on_grid(xs);
    const double h = span / cells;
    double tv = 0.0;
    double prev_slope = (vs[1] - vs[0]) / h;
    for (int i = 1; i < cells; ++i) {
      const double slope = (vs[size_t(i) + 1] - vs[size_t(i)]) / h;
      tv += std::fabs(slope - prev_slope);
      prev_slope = slope;
    }
    rep.levels.push_back({h, tv});
  }

  // Growth ratios of the finest `consecutive` level pairs.
  std::vector<double> ratios;
  const size_t n = rep.levels.size();
  const size_t first = n - size_t(opts.consecutive);
  for (size_t i = first; i < n; ++i) {
    const double prev_tv = rep.levels[i - 1].slope_total_variation;
    const double cur_tv = rep.levels[i].slope_total_variation;
    if (prev_tv <= 1e-14 * slope_scale && cur_tv <= 1e-14 * slope_scale) {
      ratios.push_back(1.0);  // affine window: no variation at any level
    } else if (prev_tv <= 0.0) {
      ratios.push_back(kInf);
    } else {
      ratios.push_back(cur_tv / prev_tv);
    }
  }
  rep.divergence_ratio = *std::min_element(ratios.begin(), ratios.end());
  rep.max_growth_ratio = *std::max_element(ratios.begin(), ratios.end());

  if (rep.divergence_ratio >= opts.notdc_ratio)
    rep.verdict = DcVerdict::kNotDc;
  else if (rep.max_growth_ratio <= opts.dc_ratio)
    rep.verdict = DcVerdict::kDc;
  else
    rep.verdict = DcVerdict::kInconclusive;
  return rep;
}

DerivativeEstimate one_sided_derivative(const ScaleFunction& s, double x,
                                        Side side,
                                        const DerivativeOptions& opts) {
  if (!s.domain().interior_contains(x))
    throw BadParam("one_sided_derivative needs x in the interval interior");

  DerivativeEstimate est;
  const double dir = (side == Side::kRight) ? 1.0 : -1.0;
  // Keep the whole h-sequence inside the domain.
  double h0 = opts.h0_rel * (1.0 + std::fabs(x));
  const double room = (side == Side::kRight) ? s.domain().upper() - x
                                             : x - s.domain().lower();
  if (std::isfinite(room)) h0 = std::min(h0, 0.5 * room);

  est.quotients.reserve(size_t(opts.halvings) + 1);
  for (int k = 0; k <= opts.halvings; ++k) {
    const double h = std::ldexp(h0, -k);
    const double q = s.increment(x, x + dir * h) / (dir * h);
    est.quotients.push_back(q);
  }

  // Blow-up: a sustained geometric climb of the quotient magnitudes.
  const auto& qs = est.quotients;
  for (size_t k = size_t(opts.grow_run); k < qs.size(); ++k) {
    bool climbing = true;
    for (size_t j = k - size_t(opts.grow_run) + 1; j <= k; ++j) {
      if (!(std::fabs(qs[j]) > std::fabs(qs[j - 1]))) {
        climbing = false;
        break;
      }
    }
    if (climbing && std::fabs(qs[k]) >=
                        opts.grow_factor * std::fabs(qs[k - size_t(opts.grow_run)])) {
      est.blow_up = true;
      est.value = kInf;
      return est;
    }
  }

  // Richardson extrapolation (first order): r_k = 2 q_k - q_{k-1}.
  std::vector<double> r(qs.size());
  r[0] = qs[0];
  for (size_t k = 1; k < qs.size(); ++k) r[k] = 2.0 * qs[k] - qs[k - 1];
  double best_spread = kInf;
  double best_value = r.back();
  for (size_t k = 2; k < r.size(); ++k) {
    const double spread =
        std::fabs(r[k] - r[k - 1]) + std::fabs(r[k - 1] - r[k - 2]);
    if (spread < best_spread) {
      best_spread = spread;
      best_value = r[k];
    }
  }
  if (best_spread > opts.cauchy_tol * (1.0 + std::fabs(best_value)))
    throw NotConverged("one-sided derivative quotients oscillate at x = " +
                       std::to_string(x));
  est.value = best_value;
  return est;
}

double SignedGridMeasure::total_variation() const {
  double tv = 0.0;
  for (double m : masses) tv += std::fabs(m);
  return tv;
}

double SignedGridMeasure::mass(double a, double b) const {
  double total = 0.0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i] >= a && breakpoints[i + 1] <= b) total += masses[i];
  }
  return total;
}

SignedGridMeasure second_derivative_measure(const ScaleFunction& g,
                                            const std::vector<double>& grid) {
  if (grid.size() < 3)
    throw BadParam("second_derivative_measure needs at least 3 grid points");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw BadParam("second_derivative_measure grid must be increasing");

  const DcReport rep = dc_check(g, grid.front(), grid.back());
  if (rep.verdict == DcVerdict::kNotDc)
    throw NotDcError(g.describe());

  SignedGridMeasure out;
  out.breakpoints = grid;
  out.masses.resize(grid.size() - 1);
  double prev = g.derivative_minus(grid.front());
  for (size_t i = 1; i < grid.size(); ++i) {
    const double cur = g.derivative_minus(grid[i]);
    out.masses[i - 1] = cur - prev;
    prev = cur;
  }
  return out;
}

}  // namespace gdm
