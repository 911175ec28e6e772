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

#ifndef GDM_SPEED_HPP
#define GDM_SPEED_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdm/quadrature.hpp"
#include "gdm/scale.hpp"

namespace gdm {

struct SpeedAtom {
  double location = 0.0;
  double mass = 0.0;  // may be +inf (absorbing boundary atom)
};

/// Density part of a speed measure. Named kinds serialize; the callable is
/// the evaluator. Convention throughout: standard Brownian motion has
/// density == 1 (Lebesgue speed), so expected-exit-time formulas carry an
/// explicit factor 2.
class SpeedDensity {
 public:
  enum class Kind { kLebesgue, kPiecewiseHalfLine, kDyadicSpikeScaled,
                    kFromCoefficients, kTabulated, kCustom };

  static SpeedDensity lebesgue();
  /// left on x < split, right on x >= split
  static SpeedDensity piecewise(double split, double left, double right);
  static SpeedDensity tabulated(std::vector<double> grid,
                                std::vector<double> values);
  static SpeedDensity custom(std::string label,
                             std::function<double(double)> fn);

  double operator()(double x) const { return fn_(x); }
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

 private:
  SpeedDensity(Kind kind, std::string label, std::function<double(double)> fn)
      : kind_(kind), label_(std::move(label)), fn_(std::move(fn)) {}
  friend class SpeedMeasure;

  Kind kind_;
  std::string label_;
  std::function<double(double)> fn_;
};

/// Speed measure: absolutely continuous density on the interval interior
/// plus a finite list of atoms. Immutable.
class SpeedMeasure {
 public:
  static constexpr const char* kConvention = "BM-speed=Lebesgue";

  SpeedMeasure(SpeedDensity density, std::vector<SpeedAtom> atoms);

  double density(double x) const { return density_fn_(x); }
  const SpeedDensity& density_spec() const { return density_; }
  const std::vector<SpeedAtom>& atoms() const { return atoms_; }
  std::optional<double> atom_mass_at(double x) const;

  /// Atom masses summed over the closed interval [a, b] (one atom per
  /// location). Infinite masses propagate.
  double atom_mass_in(double a, double b) const;

  /// Same density, atoms filtered to the closed interval [lo, hi]; for
  /// restricting a measure to a sub-interval of the state space.
  SpeedMeasure restricted(double lo, double hi) const;

  std::string describe() const;

 private:
  SpeedDensity density_;
  std::function<double(double)> density_fn_;
  std::vector<SpeedAtom> atoms_;  // sorted by location
};

/// m([a, b]) with closed-interval atom semantics; +inf when the density
/// quadrature detects divergence or an atom mass is infinite. Divergence is
/// a value, not an error.
struct ExtendedMass {
  double value = 0.0;
  bool infinite = false;
};

ExtendedMass speed_mass(const SpeedMeasure& m, double a, double b,
                        const MidpointOptions& opts = {});

/// m(dx) = dx / (s'(x) sigma^2(x)); no atoms. The scale must carry a
/// positive derivative (it normally comes from scale_from_coefficients).
SpeedMeasure speed_from_coefficients(const Coefficient& drift,
                                     const Coefficient& vol,
                                     const ScaleFunction& scale);

}  // namespace gdm

#endif  // GDM_SPEED_HPP
