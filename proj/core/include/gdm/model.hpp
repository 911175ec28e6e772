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

#ifndef GDM_MODEL_HPP
#define GDM_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "gdm/interval.hpp"
#include "gdm/scale.hpp"
#include "gdm/speed.hpp"

namespace gdm {

enum class BoundaryBehaviorKind {
  kUnspecified,
  kAbsorbing,
  kInstantaneouslyReflecting,
  kStickyReflecting,
};

struct DeclaredBoundary {
  BoundaryBehaviorKind kind = BoundaryBehaviorKind::kUnspecified;
  double sticky_mass = 0.0;  // meaningful for kStickyReflecting only
};

/// A general diffusion market model: state interval, scale function, speed
/// measure and declared behavior at finite endpoints. Immutable; validation
/// happens at construction.
class DiffusionModel {
 public:
  DiffusionModel(StateInterval interval, ScaleFunction scale,
                 SpeedMeasure speed, DeclaredBoundary lower,
                 DeclaredBoundary upper, std::string label);

  const StateInterval& interval() const { return interval_; }
  const ScaleFunction& scale() const { return scale_; }
  const SpeedMeasure& speed() const { return speed_; }
  const DeclaredBoundary& lower_boundary() const { return lower_; }
  const DeclaredBoundary& upper_boundary() const { return upper_; }
  const DeclaredBoundary& declared_boundary(bool upper) const {
    return upper ? upper_ : lower_;
  }
  const std::string& label() const { return label_; }

 private:
  void validate() const;

  StateInterval interval_;
  ScaleFunction scale_;
  SpeedMeasure speed_;
  DeclaredBoundary lower_;
  DeclaredBoundary upper_;
  std::string label_;
};

/// Parameters for the built-in model families.
struct BuiltinParams {
  double rho = 1.0;       // sticky_bm stickiness
  double alpha = 0.3;     // skew_bm skewness, in (0,1) \ {1/2}
  double mu0 = -1.0;      // absorbed_ito constant drift
  bool sigma_linear = true;  // absorbed_ito: sigma(x) = sigma0 * x vs const
  double sigma0 = 1.0;
  double lower = 0.0;     // absorbed_ito interval
  double upper = kInf;
  double anchor = 1.0;
};

/// Catalog constructor. Names: brownian, sticky_bm, skew_bm, absorbed_ito,
/// counterexample_nondc, counterexample_reflecting.
DiffusionModel builtin(const std::string& name, const BuiltinParams& params = {});

/// All catalog models with their default parameters (rho = 2, alpha = 0.3,
/// absorbed_ito with mu = -1 and sigma(x) = x on (0, inf)).
std::vector<DiffusionModel> builtin_catalog();

std::vector<std::string> builtin_names();

/// The spiked density used by the stress-test scales; see dyadic_spike.hpp.
double counterexample_density(double x);

/// Number of dyadic speed atoms kept in the built-in stress models.
inline constexpr int kCounterexampleAtomCount = 40;

}  // namespace gdm

#endif  // GDM_MODEL_HPP
