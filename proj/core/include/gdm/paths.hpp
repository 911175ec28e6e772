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

#ifndef GDM_PATHS_HPP
#define GDM_PATHS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gdm/chain.hpp"
#include "gdm/rng.hpp"
#include "gdm/stats.hpp"

namespace gdm {

/// Seeded ensemble of chain paths. Paths are not materialized: each one is a
/// deterministic function of (seed, path_index), so consumers replay them on
/// demand and the whole ensemble costs O(1) memory. Identical inputs give
/// identical ensembles on any thread count, because every path owns its RNG
/// stream and reductions combine shards in fixed order.
class PathEnsemble {
 public:
  PathEnsemble(std::shared_ptr<const GridChain> chain, double x0,
               double horizon, int64_t n_paths, uint64_t seed);

  const GridChain& chain() const { return *chain_; }
  std::shared_ptr<const GridChain> chain_ptr() const { return chain_; }
  double x0() const { return x0_; }
  size_t start_node() const { return start_; }
  double horizon() const { return horizon_; }
  int64_t n_paths() const { return n_paths_; }
  uint64_t seed() const { return seed_; }

  /// Replays one path. The visitor receives (time, node) after every jump,
  /// starting with (0, start); `time` is the jump instant. Returns the node
  /// occupied at the horizon (or the absorbing node reached).
  struct PathPoint {
    double time;
    size_t node;
  };
  template <class Visitor>
  size_t replay(int64_t path_index, Visitor&& visit) const {
    Rng rng(seed_, uint64_t(path_index));
    size_t state = start_;
    double t = 0.0;
    visit(PathPoint{0.0, state});
    while (true) {
      if (chain_->kind[state] == NodeKind::kAbsorbing) return state;
      const double h = chain_->holding[state];
      if (t + h >= horizon_) return state;
      t += h;
      const double p = chain_->p_up[state];
      const bool up = p >= 1.0 ? true : (p <= 0.0 ? false : rng.uniform() < p);
      state = up ? state + 1 : state - 1;
      visit(PathPoint{t, state});
    }
  }

  /// First materialized events of one path, capped.
  std::vector<PathPoint> events(int64_t path_index, size_t cap) const;

 private:
  std::shared_ptr<const GridChain> chain_;
  double x0_;
  size_t start_;
  double horizon_;
  int64_t n_paths_;
  uint64_t seed_;
};

PathEnsemble simulate_paths(std::shared_ptr<const GridChain> chain, double x0,
                            double horizon, int64_t n_paths, uint64_t seed);

/// Fixed-shard parallel sweep over the ensemble: `make` builds a per-shard
/// accumulator, `body(acc, path_index)` folds one path, `combine` merges in
/// shard order. Thread count from GDM_THREADS (default: min(hw, 8)).
int ensemble_threads();

struct HittingStats {
  int64_t n_exited = 0;
  int64_t n_total = 0;
  double p_hit_upper = 0.0;
  double p_hit_upper_se = 0.0;
  double mean_exit_time = 0.0;
  double mean_exit_time_se = 0.0;
};

/// First-exit statistics from the band (a, b); a and b snap to chain nodes.
/// Throws NoExits when no path leaves before the horizon.
HittingStats hitting_stats(const PathEnsemble& ensemble, double a, double b);

struct MartingaleCheckpoint {
  double t = 0.0;
  double mean_raw = 0.0, se_raw = 0.0;
  bool pass_raw = false;
  double mean_scale = 0.0, se_scale = 0.0;
  bool pass_scale = false;
};

struct MartingaleReport {
  std::vector<MartingaleCheckpoint> checkpoints;
  double band_lo = 0.0, band_hi = 0.0;
  bool all_raw_pass = false;
  bool all_scale_pass = false;
};

/// Stopped-martingale test: E[X_{t ^ tau_band}] within 3 SE of x0 per
/// checkpoint, on raw states and on scale-transformed states.
MartingaleReport martingale_test(const PathEnsemble& ensemble,
                                 const std::vector<double>& checkpoints,
                                 double band_lo, double band_hi);

/// Number of paths that ever visit the node nearest to x.
int64_t count_visits_to(const PathEnsemble& ensemble, double x);

}  // namespace gdm

#endif  // GDM_PATHS_HPP
