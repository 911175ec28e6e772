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

#ifndef GDM_STRATEGY_HPP
#define GDM_STRATEGY_HPP

#include "gdm/paths.hpp"
#include "gdm/verdict.hpp"

namespace gdm {

/// Pathwise payoff statistics of a strategy over an ensemble. The value
/// process is the pathwise sum of position * price increment; the running
/// minimum tracks admissibility against the declared bound c.
struct PayoffStats {
  int64_t n = 0;
  double min_payoff = 0.0;
  double mean = 0.0;
  double std_err = 0.0;
  double frac_positive = 0.0;
  double frac_positive_ci99_lo = 0.0;
  double frac_positive_ci99_hi = 0.0;
  int64_t admissibility_violations = 0;  // paths with running value < -c - 1e-12
};

/// Evaluates a (piecewise-constant, predictable) strategy on grid paths.
/// kBuyHoldAfterHit: position = direction after the first visit to the
/// strategy level; 0 before. kPostHitClock applies to the SDE demo only.
PayoffStats evaluate_strategy(const PathEnsemble& ensemble,
                              const ArbitrageDescriptor& strategy, double c);

/// Zero-position baseline (framework sanity): all payoffs are exactly 0.
PayoffStats evaluate_zero_strategy(const PathEnsemble& ensemble);

}  // namespace gdm

#endif  // GDM_STRATEGY_HPP
