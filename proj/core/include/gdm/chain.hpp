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

#ifndef GDM_CHAIN_HPP
#define GDM_CHAIN_HPP

#include <string>
#include <vector>

#include "gdm/model.hpp"
#include "gdm/quadrature.hpp"

namespace gdm {

// Birth-death chain approximation of a general diffusion built directly from
// (s, m): nodes uniform in scale coordinates with atoms inserted as nodes,
//   p_up(x_k) = (s(x_k) - s(x_k-1)) / (s(x_k+1) - s(x_k-1)),
// so the scale-transformed chain is a martingale identically, and mean
// holding times from the Green kernel
//   G_{a,b}(x,y) = (s(x^y) - s(a)) (s(b) - s(x v y)) / (s(b) - s(a)),
//   H(x_k) = 2 int G_{k-1,k+1}(x_k, y) m(dy).
// Holding times are deterministic means rather than exponential draws: the
// weak limit is the same diffusion, the variance halves, and the sticky-atom
// inflation (rho * h at an atom) is directly auditable.

enum class NodeKind { kInterior, kAtom, kAbsorbing, kReflecting };

struct GridChain {
  std::vector<double> nodes;         // ascending
  std::vector<double> scale_values;  // s(node)
  std::vector<double> p_up;          // P(next = node+1); 1 at reflecting
  std::vector<double> holding;       // mean holding time per node
  std::vector<NodeKind> kind;
  std::vector<bool> truncation_cut;  // artificial absorbing cut, not a real boundary
  std::string model_label;
  std::vector<std::string> notices;  // e.g. dropped atoms

  size_t size() const { return nodes.size(); }
  /// Nearest node to x.
  size_t snap(double x) const;
};

struct ChainOptions {
  MidpointOptions quadrature{.rel_tol = 1e-9, .initial_cells = 8,
                             .max_levels = 16};
  std::vector<double> extra_nodes;  // start points etc., inserted exactly
};

/// Builds the chain on [trunc_lo, trunc_hi]. Endpoints equal to finite model
/// boundaries become real absorbing/reflecting nodes; anything else becomes
/// an absorbing node flagged as a truncation cut. Atoms outside the
/// truncation are dropped with a notice.
GridChain build_chain(const DiffusionModel& model, int n_cells,
                      double trunc_lo, double trunc_hi,
                      const ChainOptions& opts = {});

struct Truncation {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_is_real_boundary = false;
  bool hi_is_real_boundary = false;
};

/// Truncation window for a start point and horizon: finite declared
/// boundaries are kept; open ends are cut where the scale distance exceeds
/// 8 sqrt(horizon * max local variance rate), making the cut unreachable
/// before the horizon except with negligible probability.
Truncation choose_truncation(const DiffusionModel& model, double x0,
                             double horizon);

}  // namespace gdm

#endif  // GDM_CHAIN_HPP
