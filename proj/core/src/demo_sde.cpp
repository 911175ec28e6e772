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

#include "gdm/demo_sde.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gdm/errors.hpp"
#include "gdm/paths.hpp"
#include "gdm/rng.hpp"

namespace gdm {

DemoEnsemble simulate_demo_25(double x0, double T, double dt, int64_t n_paths,
                              uint64_t seed) {
  if (!(x0 > 0.0)) throw BadParam("demo needs x0 > 0");
  if (!(T > 0.0) || !(dt > 0.0) || dt > T / 100.0)
    throw BadParam("demo needs dt <= T/100");
  if (n_paths <= 0) throw BadParam("n_paths must be positive");

  const int64_t steps = int64_t(std::llround(T / dt));
  std::vector<DemoPathRecord> paths(static_cast<size_t>(n_paths));

  const int threads = ensemble_threads();
  const int64_t shards = std::min<int64_t>(n_paths, 256);
  std::atomic<int64_t> next{0};
  const double sqrt_dt = std::sqrt(dt);
  auto worker = [&]() {
    while (true) {
      const int64_t sh = next.fetch_add(1);
      if (sh >= shards) break;
      const int64_t lo = n_paths * sh / shards;
      const int64_t hi = n_paths * (sh + 1) / shards;
      for (int64_t i = lo; i < hi; ++i) {
        Rng rng(seed, uint64_t(i));
        double y = x0;
        double t0 = kInf;
        for (int64_t k = 0; k < steps; ++k) {
          if (std::isinf(t0)) {
            y += -dt + y * sqrt_dt * rng.normal();
            if (y <= 0.0) {
              y = 0.0;  // first grid time at or below zero: switch regimes
              t0 = double(k + 1) * dt;
            }
          } else {
            y += dt;
          }
        }
        paths[size_t(i)] = {t0, y};
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return DemoEnsemble(x0, T, dt, n_paths, seed, std::move(paths));
}

BinomialCi demo_hit_fraction(const DemoEnsemble& ensemble) {
  int64_t hits = 0;
  for (const auto& p : ensemble.paths())
    if (std::isfinite(p.t0_hit)) ++hits;
  return wilson_interval(hits, ensemble.n_paths(), kZ99);
}

PayoffStats evaluate_strategy(const DemoEnsemble& ensemble,
                              const ArbitrageDescriptor& strategy, double c) {
  PayoffStats out;
  out.n = ensemble.n_paths();
  MeanAccumulator acc;
  double min_payoff = kInf;
  int64_t positive = 0, violations = 0;
  const double T = ensemble.horizon();
  const double tol = c + 1e-12;

  for (const auto& p : ensemble.paths()) {
    double payoff = 0.0;
    double run_min = 0.0;
    if (strategy.kind == StrategyKind::kPostHitClock) {
      // V_t = (t - T0)^+ up to T: nonnegative and nondecreasing after the hit.
      const double t0 = std::min(p.t0_hit, T);
      payoff = T - t0;
      run_min = 0.0;
    } else {
      // Buy-and-hold one unit from the first hit of the level (demo level 0):
      // value = dir * (Y_T - level) after a hit, 0 otherwise.
      const double dir =
          strategy.direction == Direction::kLong ? 1.0 : -1.0;
      if (std::isfinite(p.t0_hit)) {
        payoff = dir * (p.terminal - strategy.level);
        run_min = std::min(0.0, payoff);  // post-hit leg is monotone in t
      }
    }
    acc.add(payoff);
    if (payoff < min_payoff) min_payoff = payoff;
    if (payoff > 0.0) ++positive;
    if (run_min < -tol) ++violations;
  }
  out.min_payoff = min_payoff;
  out.mean = acc.mean();
  out.std_err = acc.std_err();
  const BinomialCi ci = wilson_interval(positive, out.n, kZ99);
  out.frac_positive = ci.fraction;
  out.frac_positive_ci99_lo = ci.lo;
  out.frac_positive_ci99_hi = ci.hi;
  out.admissibility_violations = violations;
  return out;
}

}  // namespace gdm
