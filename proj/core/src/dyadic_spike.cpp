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

#include "gdm/dyadic_spike.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "gdm/errors.hpp"

namespace gdm {
namespace dyadic_spike {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
// Blocks are tabulated down to 2^-kMaxBlock, past the smallest positive
// subnormal double, so the primitive is defined for every representable x.
constexpr int kMaxBlock = 1100;

// log2 f at the dyadic point 2^-k.
double peak_log(int k) { return k + std::log2(double(k)); }

// log2 of the lower envelope at u = log2 x < 0.
double env_log(double u) { return -u - 2.0 * std::log2(-u); }

struct Segment {
  // log2 f = g0 + slope * (u - u0) on [u_lo, u_hi]; lower-envelope pieces are
  // marked exact instead.
  double u_lo, u_hi;
  double g0, u0, slope;
  bool on_envelope;
};

// The three segments of block n, left to right in u = log2 x.
std::array<Segment, 3> block_segments(int n) {
  const double a = -double(n) - 1.0;   // u at 2^-(n+1)
  const double b = -double(n);         // u at 2^-n
  const double u1 = a + spike_halfwidth(n + 1);
  const double u2 = b - spike_halfwidth(n);
  std::array<Segment, 3> seg{};
  seg[0] = {a, u1, peak_log(n + 1), a,
            (env_log(u1) - peak_log(n + 1)) / (u1 - a), false};
  seg[1] = {u1, u2, 0.0, 0.0, 0.0, true};
  seg[2] = {u2, b, env_log(u2), u2, (peak_log(n) - env_log(u2)) / (b - u2),
            false};
  return seg;
}

double segment_log_value(const Segment& s, double u) {
  if (s.on_envelope) return env_log(u);
  return s.g0 + s.slope * (u - s.u0);
}

// Integral of f over the x-image of [u_lo, u_hi] within one segment.
double segment_integral(const Segment& s, double u_lo, double u_hi) {
  if (u_hi <= u_lo) return 0.0;
  if (s.on_envelope) {
    // integral of 1/(x log2(x)^2) dx = ln2 * (1/u_lo - 1/u_hi), u < 0
    return kLn2 * (1.0 / u_lo - 1.0 / u_hi);
  }
  // f(x) = f(x0) * (x/x0)^slope with x = 2^u, so x*f(x) is a power of x and
  //   int f dx = (f(xb)*xb - f(xa)*xa) / (slope + 1).
  // The products x*f(x) stay moderate even where f alone overflows, so they
  // are formed in log2 space.
  const double fa_xa = std::exp2(segment_log_value(s, u_lo) + u_lo);
  const double fb_xb = std::exp2(segment_log_value(s, u_hi) + u_hi);
  const double sp1 = s.slope + 1.0;
  if (std::fabs(sp1) < 1e-9) return fa_xa * kLn2 * (u_hi - u_lo);
  return (fb_xb - fa_xa) / sp1;
}

// Integral of f over (2^-(n+1), min(t, 2^-n)] within block n.
double block_partial(int n, double u_hi) {
  const auto segs = block_segments(n);
  double total = 0.0;
  for (const auto& s : segs) {
    if (u_hi <= s.u_lo) break;
    total += segment_integral(s, s.u_lo, std::min(u_hi, s.u_hi));
  }
  return total;
}

struct Tables {
  // integral[n] = int over block n; suffix[n] = S(2^-n) = sum_{k >= n+1}...
  // stored as suffix[n] = integral of f over (0, 2^-n].
  std::vector<double> block;   // index 1..kMaxBlock
  std::vector<double> suffix;  // suffix[n] = S(2^-n), index 0..kMaxBlock

  Tables() : block(kMaxBlock + 2, 0.0), suffix(kMaxBlock + 2, 0.0) {
    for (int n = 1; n <= kMaxBlock; ++n)
      block[n] = block_partial(n, -double(n));
    suffix[kMaxBlock + 1] = 0.0;  // below the last block f is not sampled
    for (int n = kMaxBlock; n >= 1; --n)
      suffix[n] = suffix[n + 1] + block[n];
    suffix[0] = suffix[1];  // S(2^0) unused; S(1/2) = suffix[1]
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

double spike_halfwidth(int k) {
  const double cube = double(k) * double(k) * double(k);
  return std::min(0.2, 1.0 / cube);
}

bool dyadic_index(double x, int* n) {
  int e = 0;
  const double m = std::frexp(x, &e);
  if (m != 0.5) return false;
  const int idx = 1 - e;  // x = 2^(e-1) = 2^-idx
  if (idx < 1) return false;
  if (n) *n = idx;
  return true;
}

int block_index(double x) {
  if (x > 0.5) return 0;
  int e = 0;
  const double m = std::frexp(x, &e);
  // x in (2^(e-1), 2^e) for m > 0.5; x == 2^(e-1) for m == 0.5.
  return (m == 0.5) ? (1 - e) : -e;
}

double lower_envelope(double x) {
  const double u = std::log2(x);
  return 1.0 / (x * u * u);
}

double upper_envelope(double x) {
  const double u = std::log2(x);
  return std::fabs(u) / x;
}

double value(double x) {
  if (!(x > 0.0)) throw DomainError("dyadic spike density needs x > 0");
  if (x >= 0.5) return 2.0;
  int nd = 0;
  if (dyadic_index(x, &nd)) return double(nd) / x;  // exactly n * 2^n
  const int n = block_index(x);
  if (n > kMaxBlock) return lower_envelope(x);  // beyond the tabulated range
  const double u = std::log2(x);
  for (const auto& s : block_segments(n)) {
    if (u <= s.u_hi) return std::exp2(segment_log_value(s, u));
  }
  return std::exp2(peak_log(n));
}

double primitive(double t) {
  if (t < 0.0) throw DomainError("dyadic spike primitive needs t >= 0");
  if (t == 0.0) return 0.0;
  const Tables& tb = tables();
  if (t >= 0.5) return tb.suffix[1] + 2.0 * (t - 0.5);
  int nd = 0;
  if (dyadic_index(t, &nd)) return tb.suffix[nd];
  const int n = block_index(t);
  if (n > kMaxBlock) return 0.0;
  return tb.suffix[n + 1] + block_partial(n, std::log2(t));
}

double primitive_inverse(double y) {
  if (y < 0.0) throw DomainError("dyadic spike primitive inverse needs y >= 0");
  if (y == 0.0) return 0.0;
  const Tables& tb = tables();
  if (y >= tb.suffix[1]) return 0.5 + 0.5 * (y - tb.suffix[1]);
  // Find the block with S(2^-(n+1)) < y <= S(2^-n): suffix decreasing in n.
  int lo = 1, hi = kMaxBlock;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (y > tb.suffix[mid + 1]) hi = mid; else lo = mid + 1;
  }
  const int n = lo;
  if (y <= tb.suffix[kMaxBlock + 1]) return std::ldexp(1.0, -kMaxBlock - 1);
  double a = std::ldexp(1.0, -n - 1);
  double b = std::ldexp(1.0, -n);
  for (int it = 0; it < 80 && a < b; ++it) {
    const double m = 0.5 * (a + b);
    if (primitive(m) < y) a = m; else b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace dyadic_spike
}  // namespace gdm
