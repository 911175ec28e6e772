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

#ifndef GDM_STATS_HPP
#define GDM_STATS_HPP

#include <cmath>
#include <cstdint>

namespace gdm {

/// Plain-sum accumulator; shards combine in fixed index order so results do
/// not depend on thread scheduling.
struct MeanAccumulator {
  int64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  void combine(const MeanAccumulator& o) {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return n > 0 ? sum / double(n) : 0.0; }
  double variance() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double v = (sum_sq - double(n) * m * m) / double(n - 1);
    return v > 0.0 ? v : 0.0;
  }
  double std_err() const {
    return n > 0 ? std::sqrt(variance() / double(n)) : 0.0;
  }
};

struct BinomialCi {
  double fraction = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval.
inline BinomialCi wilson_interval(int64_t successes, int64_t n, double z) {
  BinomialCi ci;
  if (n <= 0) return ci;
  const double p = double(successes) / double(n);
  ci.fraction = p;
  const double z2n = z * z / double(n);
  const double denom = 1.0 + z2n;
  const double center = (p + 0.5 * z2n) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / double(n) + 0.25 * z2n / double(n)) / denom;
  ci.lo = center - half;
  ci.hi = center + half;
  if (ci.lo < 0.0) ci.lo = 0.0;
  if (ci.hi > 1.0) ci.hi = 1.0;
  return ci;
}

inline constexpr double kZ99 = 2.5758293035489004;  // two-sided 99%

}  // namespace gdm

#endif  // GDM_STATS_HPP
