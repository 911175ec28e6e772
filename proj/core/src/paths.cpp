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

#include "gdm/paths.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "gdm/errors.hpp"

namespace gdm {

PathEnsemble::PathEnsemble(std::shared_ptr<const GridChain> chain, double x0,
                           double horizon, int64_t n_paths, uint64_t seed)
    : chain_(std::move(chain)),
      x0_(x0),
      start_(chain_->snap(x0)),
      horizon_(horizon),
      n_paths_(n_paths),
      seed_(seed) {
  if (!(horizon > 0.0)) throw BadParam("horizon must be positive");
  if (n_paths <= 0) throw BadParam("n_paths must be positive");
}

PathEnsemble simulate_paths(std::shared_ptr<const GridChain> chain, double x0,
                            double horizon, int64_t n_paths, uint64_t seed) {
  return PathEnsemble(std::move(chain), x0, horizon, n_paths, seed);
}

std::vector<PathEnsemble::PathPoint> PathEnsemble::events(int64_t path_index,
                                                          size_t cap) const {
  std::vector<PathPoint> out;
  out.reserve(std::min<size_t>(cap, 1024));
  replay(path_index, [&](const PathPoint& p) {
    if (out.size() < cap) out.push_back(p);
  });
  return out;
}

int ensemble_threads() {
  if (const char* env = std::getenv("GDM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return int(std::min(hw == 0 ? 1u : hw, 8u));
}

namespace {

// Fixed shards, combined in shard order: bitwise-deterministic results for
// any thread count.
template <class Acc, class Body>
std::vector<Acc> sharded_sweep(int64_t n_paths, const Body& body) {
  const int threads = ensemble_threads();
  const int64_t shards = std::min<int64_t>(n_paths, 256);
  std::vector<Acc> acc(static_cast<size_t>(shards));
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
    pool.reserve(size_t(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return acc;
}

}  // namespace

HittingStats hitting_stats(const PathEnsemble& ensemble, double a, double b) {
  const GridChain& chain = ensemble.chain();
  const size_t ia = chain.snap(a);
  const size_t ib = chain.snap(b);
  if (!(ia < ensemble.start_node() && ensemble.start_node() < ib))
    throw BadParam("hitting band must bracket the start node");

  struct Acc {
    int64_t exits = 0;
    int64_t upper = 0;
    MeanAccumulator time;
  };
  auto shards = sharded_sweep<Acc>(
      ensemble.n_paths(), [&](Acc& acc, int64_t i) {
        bool exited = false, hit_upper = false;
        double when = 0.0;
        ensemble.replay(i, [&](const PathEnsemble::PathPoint& p) {
          if (exited) return;
          if (p.node <= ia || p.node >= ib) {
            exited = true;
            hit_upper = p.node >= ib;
            when = p.time;
          }
        });
        if (exited) {
          ++acc.exits;
          if (hit_upper) ++acc.upper;
          acc.time.add(when);
        }
      });

  Acc total;
  for (const auto& s : shards) {
    total.exits += s.exits;
    total.upper += s.upper;
    total.time.combine(s.time);
  }
  if (total.exits == 0)
    throw NoExits("band (" + std::to_string(a) + ", " + std::to_string(b) + ")");

  HittingStats out;
  out.n_exited = total.exits;
  out.n_total = ensemble.n_paths();
  out.p_hit_upper = double(total.upper) / double(total.exits);
  out.p_hit_upper_se = std::sqrt(
      out.p_hit_upper * (1.0 - out.p_hit_upper) / double(total.exits));
  out.mean_exit_time = total.time.mean();
  out.mean_exit_time_se = total.time.std_err();
  return out;
}

MartingaleReport martingale_test(const PathEnsemble& ensemble,
                                 const std::vector<double>& checkpoints,
                                 double band_lo, double band_hi) {
  const GridChain& chain = ensemble.chain();
  const size_t ilo = chain.snap(band_lo);
  const size_t ihi = chain.snap(band_hi);
  if (!(ilo < ensemble.start_node() && ensemble.start_node() < ihi))
    throw BadParam("stop band must bracket the start node");
  std::vector<double> ts = checkpoints;
  std::sort(ts.begin(), ts.end());

  struct Acc {
    std::vector<MeanAccumulator> raw, scale;
  };
  const size_t nt = ts.size();
  auto shards = sharded_sweep<Acc>(
      ensemble.n_paths(), [&](Acc& acc, int64_t i) {
        if (acc.raw.empty()) {
          acc.raw.resize(nt);
          acc.scale.resize(nt);
        }
        // Walk the path once; sample the stopped state at each checkpoint.
        size_t idx = 0;
        size_t prev_node = ensemble.start_node();
        double prev_time = 0.0;
        bool stopped = false;
        size_t stopped_node = 0;
        auto flush_until = [&](double t_next, size_t node_now) {
          while (idx < nt && ts[idx] < t_next) {
            const size_t nd = stopped ? stopped_node : node_now;
            acc.raw[idx].add(chain.nodes[nd]);
            acc.scale[idx].add(chain.scale_values[nd]);
            ++idx;
          }
        };
        ensemble.replay(i, [&](const PathEnsemble::PathPoint& p) {
          if (idx >= nt) return;
          // States between prev_time and p.time are prev_node.
          if (p.time > prev_time) flush_until(p.time, prev_node);
          prev_node = p.node;
          prev_time = p.time;
          if (!stopped && (p.node <= ilo || p.node >= ihi)) {
            stopped = true;
            stopped_node = p.node;
          }
        });
        // Remaining checkpoints see the final (or stopped) state.
        while (idx < nt) {
          const size_t nd = stopped ? stopped_node : prev_node;
          acc.raw[idx].add(chain.nodes[nd]);
          acc.scale[idx].add(chain.scale_values[nd]);
          ++idx;
        }
      });

  std::vector<MeanAccumulator> raw(nt), scl(nt);
  for (const auto& s : shards) {
    for (size_t j = 0; j < nt; ++j) {
      if (!s.raw.empty()) {
        raw[j].combine(s.raw[j]);
        scl[j].combine(s.scale[j]);
      }
    }
  }

  MartingaleReport rep;
  rep.band_lo = chain.nodes[ilo];
  rep.band_hi = chain.nodes[ihi];
  rep.all_raw_pass = true;
  rep.all_scale_pass = true;
  const double x0 = chain.nodes[ensemble.start_node()];
  const double s0 = chain.scale_values[ensemble.start_node()];
  for (size_t j = 0; j < nt; ++j) {
    MartingaleCheckpoint cp;
    cp.t = ts[j];
    cp.mean_raw = raw[j].mean();
    cp.se_raw = raw[j].std_err();
    cp.pass_raw = std::fabs(cp.mean_raw - x0) <= 3.0 * cp.se_raw;
    cp.mean_scale = scl[j].mean();
    cp.se_scale = scl[j].std_err();
    cp.pass_scale = std::fabs(cp.mean_scale - s0) <= 3.0 * cp.se_scale;
    rep.all_raw_pass &= cp.pass_raw;
    rep.all_scale_pass &= cp.pass_scale;
    rep.checkpoints.push_back(cp);
  }
  return rep;
}

int64_t count_visits_to(const PathEnsemble& ensemble, double x) {
  const size_t target = ensemble.chain().snap(x);
  struct Acc {
    int64_t visits = 0;
  };
  auto shards = sharded_sweep<Acc>(
      ensemble.n_paths(), [&](Acc& acc, int64_t i) {
        bool seen = false;
        ensemble.replay(i, [&](const PathEnsemble::PathPoint& p) {
          if (p.node == target) seen = true;
        });
        if (seen) ++acc.visits;
      });
  int64_t total = 0;
  for (const auto& s : shards) total += s.visits;
  return total;
}

}  // namespace gdm
