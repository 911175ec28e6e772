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

#ifndef GDM_DEMO_SDE_HPP
#define GDM_DEMO_SDE_HPP

#include <cstdint>
#include <vector>

#include "gdm/stats.hpp"
#include "gdm/strategy.hpp"

namespace gdm {

// Euler-Maruyama sampler for the regime-switching demo SDE
//   dY = -dt + Y dW   before the first grid time with Y <= 0,
//   dY = +dt          afterwards (Y snapped to 0 at the switch).
// The switched process is deliberately not Markov; it exists to exhibit an
// explicit arbitrage (hold one unit after the hit of zero) while an
// absolutely continuous local martingale measure still exists.

struct DemoPathRecord {
  double t0_hit = 0.0;   // +inf when zero is never hit before T
  double terminal = 0.0; // Y_T
};

class DemoEnsemble {
 public:
  DemoEnsemble(double x0, double T, double dt, int64_t n_paths, uint64_t seed,
               std::vector<DemoPathRecord> paths)
      : x0_(x0), T_(T), dt_(dt), n_paths_(n_paths), seed_(seed),
        paths_(std::move(paths)) {}

  double x0() const { return x0_; }
  double horizon() const { return T_; }
  double dt() const { return dt_; }
  int64_t n_paths() const { return n_paths_; }
  uint64_t seed() const { return seed_; }
  const std::vector<DemoPathRecord>& paths() const { return paths_; }

 private:
  double x0_;
  double T_;
  double dt_;
  int64_t n_paths_;
  uint64_t seed_;
  std::vector<DemoPathRecord> paths_;
};

/// Requires x0 > 0 and dt <= T/100.
DemoEnsemble simulate_demo_25(double x0, double T, double dt, int64_t n_paths,
                              uint64_t seed);

/// Fraction of paths hitting zero before T, with a 99% Wilson interval.
BinomialCi demo_hit_fraction(const DemoEnsemble& ensemble);

/// Strategy payoffs on demo paths. kPostHitClock: H = 1 on (T0 ^ T, T], so
/// the payoff is T - T0 ^ T pathwise. kBuyHoldAfterHit at level 0: payoff
/// is the terminal value after the hit (the post-hit leg grows linearly).
PayoffStats evaluate_strategy(const DemoEnsemble& ensemble,
                              const ArbitrageDescriptor& strategy, double c);

}  // namespace gdm

#endif  // GDM_DEMO_SDE_HPP
