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

#ifndef GDM_SCALE_HPP
#define GDM_SCALE_HPP

#include <memory>
#include <string>
#include <vector>

#include "gdm/coefficients.hpp"
#include "gdm/interval.hpp"

namespace gdm {

enum class ScaleVariantKind {
  kNatural,
  kSkewPiecewise,
  kFromCoefficients,
  kCounterexampleLog,
  kTabulated,
  kInverseView,
};

/// Strictly increasing continuous scale function on a state interval.
///
/// Values are immutable after construction and safe to share across threads.
/// Evaluation is exact (closed form) for every variant except
/// kFromCoefficients, which integrates the log-derivative ODE
///   w' = -2 mu / sigma^2,   s' = exp(w),   w(anchor) = 0, s(anchor) = 0,
/// with an embedded Runge-Kutta pair. `increment` is the preferred way to
/// get s(b) - s(a) near a point where s flattens: it avoids the cancellation
/// of subtracting two nearby values.
class ScaleFunction {
 public:
  static ScaleFunction natural(StateInterval domain);
  static ScaleFunction skew_piecewise(double alpha, StateInterval domain);
  static ScaleFunction from_coefficients(Coefficient drift, Coefficient vol,
                                         StateInterval domain, double anchor);
  /// Primitive of the dyadic spike density: two_sided gives
  /// s(x) = sign(x) * S(|x|) on R, otherwise S(x) on [0, inf).
  static ScaleFunction counterexample_log(bool two_sided);
  static ScaleFunction tabulated(std::vector<double> grid,
                                 std::vector<double> values);

  double value(double x) const;
  /// s(b) - s(a), cancellation-aware.
  double increment(double a, double b) const;
  /// Values on an ascending grid; one continuation sweep for the ODE variant.
  std::vector<double> values_on_grid(const std::vector<double>& xs) const;
  double inverse(double y) const;

  /// One-sided derivatives; +inf marks a blow-up point, 0 a flat point.
  double derivative_plus(double x) const;
  double derivative_minus(double x) const;

  /// Limit of s at an endpoint b (possibly +-inf), approached from inside.
  double limit_at_boundary(double b, bool from_above) const;

  /// Affine scale detection: true when the diffusion is a local martingale
  /// in its own coordinates (up to an affine map).
  bool is_natural_scale() const;

  const StateInterval& domain() const { return domain_; }
  ScaleVariantKind kind() const { return kind_; }
  double skew_alpha() const;
  std::string describe() const;

  /// The inverse as a function object (domain = image of this scale).
  ScaleFunction inverse_view() const;

  /// Interior points where the derivative blows up, if the variant knows
  /// them a priori; used to seed the blow-up scan.
  std::vector<double> singular_hints() const;

 private:
  struct Impl;
  ScaleFunction(ScaleVariantKind kind, StateInterval domain,
                std::shared_ptr<const Impl> impl);

  ScaleVariantKind kind_;
  StateInterval domain_;
  std::shared_ptr<const Impl> impl_;
};

/// Engelbert-Schmidt scale: s'(y) = exp(-int_anchor^y 2 mu / sigma^2),
/// s(anchor) = 0. Throws VolVanishes / QuadratureDiverged per contract.
ScaleFunction scale_from_coefficients(const Coefficient& drift,
                                      const Coefficient& vol,
                                      const StateInterval& interval,
                                      double anchor);

}  // namespace gdm

#endif  // GDM_SCALE_HPP
