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

#include "gdm/speed.hpp"

#include <algorithm>
#include <cmath>

#include "gdm/errors.hpp"

namespace gdm {

SpeedDensity SpeedDensity::lebesgue() {
  return {Kind::kLebesgue, "lebesgue", [](double) { return 1.0; }};
}

SpeedDensity SpeedDensity::piecewise(double split, double left, double right) {
  if (!(left > 0.0) || !(right > 0.0))
    throw BadParam("piecewise speed density must be positive");
  return {Kind::kPiecewiseHalfLine,
          "piecewise(split=" + std::to_string(split) +
              ", left=" + std::to_string(left) +
              ", right=" + std::to_string(right) + ")",
          [split, left, right](double x) { return x < split ? left : right; }};
}

SpeedDensity SpeedDensity::tabulated(std::vector<double> grid,
                                     std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw BadParam("tabulated density needs matching arrays, n >= 2");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw BadParam("tabulated density grid must be strictly increasing");
  for (double v : values)
    if (!(v >= 0.0)) throw BadParam("tabulated density must be nonnegative");
  auto g = std::make_shared<std::vector<double>>(std::move(grid));
  auto v = std::make_shared<std::vector<double>>(std::move(values));
  return {Kind::kTabulated, "tabulated(" + std::to_string(g->size()) + ")",
          [g, v](double x) {
            if (x <= g->front()) return v->front();
            if (x >= g->back()) return v->back();
            const auto it = std::upper_bound(g->begin(), g->end(), x);
            const size_t i = size_t(it - g->begin()) - 1;
            const double t = (x - (*g)[i]) / ((*g)[i + 1] - (*g)[i]);
            return (*v)[i] + t * ((*v)[i + 1] - (*v)[i]);
          }};
}

SpeedDensity SpeedDensity::custom(std::string label,
                                  std::function<double(double)> fn) {
  return {Kind::kCustom, std::move(label), std::move(fn)};
}

SpeedMeasure::SpeedMeasure(SpeedDensity density, std::vector<SpeedAtom> atoms)
    : density_(std::move(density)), atoms_(std::move(atoms)) {
  density_fn_ = density_.fn_;
  std::sort(atoms_.begin(), atoms_.end(),
            [](const SpeedAtom& a, const SpeedAtom& b) {
              return a.location < b.location;
            });
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].mass > 0.0))
      throw BadParam("speed atom mass must be positive");
    if (i > 0 && atoms_[i].location == atoms_[i - 1].location)
      throw BadParam("at most one speed atom per location");
  }
}

std::optional<double> SpeedMeasure::atom_mass_at(double x) const {
  const auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), x,
      [](const SpeedAtom& a, double v) { return a.location < v; });
  if (it != atoms_.end() && it->location == x) return it->mass;
  return std::nullopt;
}

double SpeedMeasure::atom_mass_in(double a, double b) const {
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (atom.location < a) continue;
    if (atom.location > b) break;
    total += atom.mass;
  }
  return total;
}

SpeedMeasure SpeedMeasure::restricted(double lo, double hi) const {
  std::vector<SpeedAtom> kept;
  for (const auto& atom : atoms_) {
    if (atom.location >= lo && atom.location <= hi) kept.push_back(atom);
  }
  return SpeedMeasure(density_, std::move(kept));
}

std::string SpeedMeasure::describe() const {
  std::string s = density_.label();
  if (!atoms_.empty())
    s += " + " + std::to_string(atoms_.size()) + " atom(s)";
  return s;
}

ExtendedMass speed_mass(const SpeedMeasure& m, double a, double b,
                        const MidpointOptions& opts) {
  if (!(a <= b)) throw BadParam("speed_mass needs a <= b");
  ExtendedMass out;
  const double atom_part = m.atom_mass_in(a, b);
  if (std::isinf(atom_part)) {
    out.infinite = true;
    out.value = kInf;
    return out;
  }
  const MidpointResult q =
      integrate_midpoint([&m](double x) { return m.density(x); }, a, b, opts);
  if (q.diverged) {
    out.infinite = true;
    out.value = kInf;
    return out;
  }
  out.value = q.value + atom_part;
  return out;
}

SpeedMeasure speed_from_coefficients(const Coefficient& drift,
                                     const Coefficient& vol,
                                     const ScaleFunction& scale) {
  (void)drift;
  auto fn = [vol, scale](double x) {
    const double sg = vol(x);
    if (std::fabs(sg) < 1e-150) throw VolVanishes(x);
    const double sp = scale.derivative_plus(x);
    return 1.0 / (sp * sg * sg);
  };
  return SpeedMeasure(
      SpeedDensity::custom("1/(s'*sigma^2)[" + vol.label() + "]", fn), {});
}

}  // namespace gdm
