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

#ifndef GDM_DYADIC_SPIKE_HPP
#define GDM_DYADIC_SPIKE_HPP

namespace gdm {

// Continuous positive density on (0, inf) with value |log2(x)|/x at every
// dyadic point 2^-n, value 2 on [1/2, inf), and values pinched between
// 1/(x log2(x)^2) and |log2(x)|/x in between. On each dyadic block
// (2^-n-1, 2^-n) it first decreases, then increases. The spike at each
// dyadic point is a geometric (log-log linear) tent of half-width
// min(0.2, n^-3) in log2(x); between spikes the density runs along the
// lower envelope 1/(x log2(x)^2). The narrow tents keep the density
// integrable at 0 even though it is unbounded there, which is what makes
// the primitive continuous with a vertical tangent at the origin.
namespace dyadic_spike {

/// f(x). Throws DomainError for x <= 0.
double value(double x);

/// S(t) = integral of f over (0, t], t >= 0. Closed form per block.
double primitive(double t);

/// Inverse of the primitive on [0, inf).
double primitive_inverse(double y);

/// Lower/upper envelopes 1/(x log2(x)^2) and |log2(x)|/x for 0 < x < 1/2.
double lower_envelope(double x);
double upper_envelope(double x);

/// Block index n with x in (2^-n-1, 2^-n], or 0 when x > 1/2.
int block_index(double x);

/// True when x == 2^-n for some positive integer n; n is written through.
bool dyadic_index(double x, int* n);

/// Spike half-width in log2 coordinates at the dyadic point 2^-k.
double spike_halfwidth(int k);

}  // namespace dyadic_spike

}  // namespace gdm

#endif  // GDM_DYADIC_SPIKE_HPP
