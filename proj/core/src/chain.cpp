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

#include "gdm/chain.hpp"

#include <algorithm>
#include <cmath>

#include "gdm/errors.hpp"

namespace gdm {

namespace {

// Local variance rate of the scale-transformed process at x: s(X) is a
// natural-scale diffusion whose speed density in scale coordinates is
// density(x)/s'(x), so the local rate is s'(x)/density(x).
double local_rate(const DiffusionModel& model, double x) {
  const double sp = model.scale().derivative_plus(x);
  const double rho = model.speed().density(x);
  if (!std::isfinite(sp) || !(rho > 0.0)) return 0.0;
  return sp / rho;
}

}  // namespace

size_t GridChain::snap(double x) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  if (it == nodes.begin()) return 0;
  if (it == nodes.end()) return nodes.size() - 1;
  const size_t hi = size_t(it - nodes.begin());
  return (x - nodes[hi - 1] <= nodes[hi] - x) ? hi - 1 : hi;
}

Truncation choose_truncation(const DiffusionModel& model, double x0,
                             double horizon) {
  if (!model.interval().interior_contains(x0)) throw BadStart(x0);
  Truncation tr;
  const ScaleFunction& s = model.scale();
  const double s0 = s.value(x0);

  for (bool upper : {false, true}) {
    const double b = upper ? model.interval().upper() : model.interval().lower();
    const DeclaredBoundary& decl = model.declared_boundary(upper);
    const bool has_behavior =
        decl.kind != BoundaryBehaviorKind::kUnspecified ||
        (std::isfinite(b) && model.speed().atom_mass_at(b).has_value());
    double cut;
    bool real = false;
    if (std::isfinite(b) && has_behavior) {
      cut = b;
      real = true;
    } else if (std::isfinite(b)) {
      // Open or undeclared finite end: cut exactly at it, flagged artificial.
      cut = b;
    } else {
      // Grow the window until the scale distance dominates the diffusive
      // range over the horizon.
      const double dir = upper ? 1.0 : -1.0;
      double rate = std::max(local_rate(model, x0), 1e-12);
      double delta = 8.0 * std::sqrt(std::max(horizon, 1e-12) * rate);
      double cand = x0;
      for (int iter = 0; iter < 24; ++iter) {
        const double s_lim = s.limit_at_boundary(b, !upper);
        double target = s0 + dir * delta;
        if (std::isfinite(s_lim)) {
          // Bounded scale image: stay just inside it.
          const double margin = 1e-3 * std::fabs(s_lim - s0);
          if ((upper && target > s_lim - margin) ||
              (!upper && target < s_lim + margin))
            target = s_lim - dir * margin;
        }
        cand = s.inverse(target);
        double r_max = rate;
        for (int j = 1; j <= 16; ++j) {
          const double y = s0 + (target - s0) * double(j) / 16.0;
          r_max = std::max(r_max, local_rate(model, s.inverse(y)));
        }
        const double next_delta =
            8.0 * std::sqrt(std::max(horizon, 1e-12) * r_max);
        if (next_delta <= delta * 1.0000001) break;
        delta = next_delta;
        rate = r_max;
      }
      cut = cand;
    }
    if (upper) {
      tr.hi = cut;
      tr.hi_is_real_boundary = real;
    } else {
      tr.lo = cut;
      tr.lo_is_real_boundary = real;
    }
  }
  if (!(tr.lo < x0 && x0 < tr.hi))
    throw EmptyTruncation("window does not contain the start point");
  return tr;
}

GridChain build_chain(const DiffusionModel& model, int n_cells,
                      double trunc_lo, double trunc_hi,
                      const ChainOptions& opts) {
  if (n_cells < 16) throw BadParam("build_chain needs n_cells >= 16");
  if (!(trunc_lo < trunc_hi)) throw EmptyTruncation("trunc_lo < trunc_hi required");
  if (trunc_lo < model.interval().lower() || trunc_hi > model.interval().upper())
    throw BadParam("truncation must stay inside the state interval");

  const ScaleFunction& s = model.scale();
  const SpeedMeasure& m = model.speed();

  GridChain chain;
  chain.model_label = model.label();

  // Scale-uniform base grid.
  const double s_lo = s.value(trunc_lo);
  const double s_hi = s.value(trunc_hi);
  std::vector<double> nodes;
  nodes.reserve(size_t(n_cells) + 16);
  nodes.push_back(trunc_lo);
  for (int k = 1; k < n_cells; ++k) {
    const double target = s_lo + (s_hi - s_lo) * double(k) / double(n_cells);
    nodes.push_back(s.inverse(target));
  }
  nodes.push_back(trunc_hi);

  // Atoms and requested nodes inserted exactly; grid nodes within a relative
  // tolerance of an inserted node give way to it.
  std::vector<double> inserted;
  for (const auto& atom : m.atoms()) {
    if (atom.location > trunc_lo && atom.location < trunc_hi) {
      inserted.push_back(atom.location);
    } else if (atom.location < trunc_lo || atom.location > trunc_hi) {
      chain.notices.push_back("atom at " + std::to_string(atom.location) +
                              " outside truncation; dropped");
    }
  }
  for (double x : opts.extra_nodes) {
    if (x > trunc_lo && x < trunc_hi) inserted.push_back(x);
  }
  std::sort(inserted.begin(), inserted.end());
  inserted.erase(std::unique(inserted.begin(), inserted.end()), inserted.end());

  for (double x : inserted) {
    // Relative-to-location tolerance: an atom near zero is a distinct node
    // however close it sits to a truncation endpoint in absolute terms.
    const double tol = 1e-9 * std::fabs(x);
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    bool replaced = false;
    if (it != nodes.end() && std::fabs(*it - x) <= tol && *it != trunc_lo &&
        *it != trunc_hi) {
      *it = x;
      replaced = true;
    } else if (it != nodes.begin() && std::fabs(*(it - 1) - x) <= tol &&
               *(it - 1) != trunc_lo && *(it - 1) != trunc_hi) {
      *(it - 1) = x;
      replaced = true;
    }
    if (!replaced && x != trunc_lo && x != trunc_hi &&
        std::fabs(x - trunc_lo) > tol && std::fabs(x - trunc_hi) > tol)
      nodes.insert(it, x);
  }

  chain.nodes = std::move(nodes);
  chain.scale_values = s.values_on_grid(chain.nodes);
  const size_t n = chain.nodes.size();
  chain.p_up.assign(n, 0.0);
  chain.holding.assign(n, 0.0);
  chain.kind.assign(n, NodeKind::kInterior);
  chain.truncation_cut.assign(n, false);

  const auto& xs = chain.nodes;
  const auto& sv = chain.scale_values;

  // Interior nodes.
  for (size_t k = 1; k + 1 < n; ++k) {
    const double ds_lo = sv[k] - sv[k - 1];
    const double ds_hi = sv[k + 1] - sv[k];
    const double denom = sv[k + 1] - sv[k - 1];
    chain.p_up[k] = ds_lo / denom;

    auto green = [&](double y, double y_s) {
      return y <= xs[k] ? (y_s - sv[k - 1]) * ds_hi / denom
                        : ds_lo * (sv[k + 1] - y_s) / denom;
    };
    double h = 0.0;
    const MidpointResult left = integrate_midpoint(
        [&](double y) { return green(y, s.value(y)) * m.density(y); },
        xs[k - 1], xs[k], opts.quadrature);
    const MidpointResult right = integrate_midpoint(
        [&](double y) { return green(y, s.value(y)) * m.density(y); }, xs[k],
        xs[k + 1], opts.quadrature);
    h += left.value + right.value;
    for (const auto& atom : m.atoms()) {
      if (atom.location > xs[k - 1] && atom.location < xs[k + 1])
        h += green(atom.location, s.value(atom.location)) * atom.mass;
    }
    chain.holding[k] = 2.0 * h;
    if (m.atom_mass_at(xs[k])) chain.kind[k] = NodeKind::kAtom;
  }

  // Endpoint nodes.
  for (bool upper : {false, true}) {
    const size_t k = upper ? n - 1 : 0;
    const double b = xs[k];
    const bool is_model_boundary =
        (upper && b == model.interval().upper()) ||
        (!upper && b == model.interval().lower());
    const DeclaredBoundary& decl = model.declared_boundary(upper);
    BoundaryBehaviorKind behavior = BoundaryBehaviorKind::kUnspecified;
    if (is_model_boundary) {
      behavior = decl.kind;
      if (behavior == BoundaryBehaviorKind::kUnspecified) {
        if (const auto atom = m.atom_mass_at(b)) {
          behavior = std::isinf(*atom)
                         ? BoundaryBehaviorKind::kAbsorbing
                         : BoundaryBehaviorKind::kStickyReflecting;
        }
      }
    }
    switch (behavior) {
      case BoundaryBehaviorKind::kAbsorbing:
        chain.kind[k] = NodeKind::kAbsorbing;
        break;
      case BoundaryBehaviorKind::kInstantaneouslyReflecting:
      case BoundaryBehaviorKind::kStickyReflecting: {
        chain.kind[k] = NodeKind::kReflecting;
        const size_t j = upper ? k - 1 : k + 1;  // interior neighbor
        chain.p_up[k] = upper ? 0.0 : 1.0;
        // Expected time to reach the neighbor from the boundary:
        //   2 int over (b, x1) of |s(x1) - s(y)| m(dy)
        // plus 2 |s(x1) - s(b)| m({b}) for a sticky atom.
        const double lo = std::min(b, xs[j]), hi = std::max(b, xs[j]);
        const double s_far = sv[j];
        const MidpointResult q = integrate_midpoint(
            [&](double y) {
              return std::fabs(s_far - s.value(y)) * m.density(y);
            },
            lo, hi, opts.quadrature);
        double h = q.value;
        for (const auto& atom : m.atoms()) {
          if (atom.location > lo && atom.location < hi)
            h += std::fabs(s_far - s.value(atom.location)) * atom.mass;
        }
        if (const auto atom = m.atom_mass_at(b))
          h += std::fabs(s_far - sv[k]) * *atom;
        chain.holding[k] = 2.0 * h;
        break;
      }
      case BoundaryBehaviorKind::kUnspecified:
        // Artificial cut (or an undeclared open end): absorbing, flagged.
        chain.kind[k] = NodeKind::kAbsorbing;
        chain.truncation_cut[k] = true;
        break;
    }
  }
  return chain;
}

}  // namespace gdm
