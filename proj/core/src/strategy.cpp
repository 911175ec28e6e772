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

#include "gdm/strategy.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gdm/errors.hpp"

namespace gdm {

namespace {

struct PayoffAcc {
  MeanAccumulator payoff;
  double min_payoff = kInf;
  int64_t positive = 0;
  int64_t violations = 0;
};

PayoffStats finalize(std::vector<PayoffAcc>& shards, int64_t n) {
  PayoffAcc total;
  total.min_payoff = kInf;
  for (const auto& s : shards) {
    total.payoff.combine(s.payoff);
    total.min_payoff = std::min(total.min_payoff, s.min_payoff);
    total.positive += s.positive;
    total.violations += s.violations;
  }
  PayoffStats out;
  out.n = n;
  out.min_payoff = total.min_payoff;
  out.mean = total.payoff.mean();
  out.std_err = total.payoff.std_err();
  const BinomialCi ci = wilson_interval(total.positive, n, kZ99);
  out.frac_positive = ci.fraction;
  out.frac_positive_ci99_lo = ci.lo;
  out.frac_positive_ci99_hi = ci.hi;
  out.admissibility_violations = total.violations;
  return out;
}

template <class Body>
std::vector<PayoffAcc> payoff_sweep(int64_t n_paths, const Body& body) {
  const int threads = ensemble_threads();
  const int64_t shards = std::min<int64_t>(n_paths, 256);
  std::vector<PayoffAcc> acc(static_cast<size_t>(shards));
  std::atomic<int64_t> next{0};
  auto worker = [&]() {
    while (true) {
      const int64_t sh = next.fetch_add(1);
      if (sh >= shards) break;
      const int64_t lo = n_paths * sh / shards;
      const int64_t hi = n_paths * (sh + 1) / shards;
      for (int64_t i = lo; i < hi; ++i) body(acc[size_t(sh)], i);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return acc;
}

}  // namespace

PayoffStats evaluate_strategy(const PathEnsemble& ensemble,
                              const ArbitrageDescriptor& strategy, double c) {
  if (strategy.kind == StrategyKind::kPostHitClock)
    throw BadParam(
        "post-hit clock strategy applies to the SDE demo, not grid chains");
  const GridChain& chain = ensemble.chain();
  const size_t level_node = chain.snap(strategy.level);
  const double dir = strategy.direction == Direction::kLong ? 1.0 : -1.0;
  const double tol = c + 1e-12;

  auto shards = payoff_sweep(ensemble.n_paths(), [&](PayoffAcc& acc,
                                                     int64_t i) {
    double value = 0.0;
    double run_min = 0.0;
    double pos = 0.0;
    bool hit = false;
    double prev_x = 0.0;
    bool first = true;
    ensemble.replay(i, [&](const PathEnsemble::PathPoint& p) {
      const double x = chain.nodes[p.node];
      if (first) {
        first = false;
      } else {
        value += pos * (x - prev_x);
        if (value < run_min) run_min = value;
      }
      prev_x = x;
      if (p.node == level_node) hit = true;
      pos = hit ? dir : 0.0;  // position for the next increment
    });
    acc.payoff.add(value);
    if (value < acc.min_payoff) acc.min_payoff = value;
    if (value > 0.0) ++acc.positive;
    if (run_min < -tol) ++acc.violations;
  });
  return finalize(shards, ensemble.n_paths());
}

PayoffStats evaluate_zero_strategy(const PathEnsemble& ensemble) {
  auto shards = payoff_sweep(ensemble.n_paths(), [&](PayoffAcc& acc, int64_t) {
    acc.payoff.add(0.0);
    if (0.0 < acc.min_payoff) acc.min_payoff = 0.0;
  });
  return finalize(shards, ensemble.n_paths());
}

}  // namespace gdm
