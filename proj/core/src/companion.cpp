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

#include "gdm/companion.hpp"

#include <cmath>

#include "gdm/errors.hpp"

namespace gdm {

SpeedMeasure companion_speed(const DiffusionModel& model) {
  const ScaleFunction scale = model.scale();
  const SpeedDensity base = model.speed().density_spec();

  std::vector<SpeedAtom> atoms;
  atoms.reserve(model.speed().atoms().size());
  for (const auto& atom : model.speed().atoms()) {
    double deriv;
    if (model.interval().interior_contains(atom.location)) {
      deriv = scale.derivative_plus(atom.location);
    } else {
      // Boundary atom: scaled by the one-sided derivative pointing inward.
      const bool at_lower = atom.location <= model.interval().lower();
      deriv = at_lower ? scale.derivative_plus(atom.location)
                       : scale.derivative_minus(atom.location);
    }
    if (!std::isfinite(deriv)) throw AtomAtBlowUp(atom.location);
    atoms.push_back({atom.location, deriv * atom.mass});
  }

  auto fn = [scale, base](double x) {
    const double d = scale.derivative_plus(x);
    return std::isfinite(d) ? d * base(x) : kInf;
  };
  return SpeedMeasure(
      SpeedDensity::custom("s'+ * (" + base.label() + ")", fn), std::move(atoms));
}

std::vector<double> scale_blow_up_points(const DiffusionModel& model) {
  std::vector<double> pts;
  for (double x : model.scale().singular_hints()) {
    if (model.interval().interior_contains(x)) pts.push_back(x);
  }
  return pts;
}

}  // namespace gdm
