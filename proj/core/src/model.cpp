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

#include "gdm/model.hpp"

#include <cmath>

#include "gdm/dyadic_spike.hpp"
#include "gdm/errors.hpp"

namespace gdm {

DiffusionModel::DiffusionModel(StateInterval interval, ScaleFunction scale,
                               SpeedMeasure speed, DeclaredBoundary lower,
                               DeclaredBoundary upper, std::string label)
    : interval_(interval),
      scale_(std::move(scale)),
      speed_(std::move(speed)),
      lower_(lower),
      upper_(upper),
      label_(std::move(label)) {
  validate();
}

void DiffusionModel::validate() const {
  if (!(scale_.domain() == interval_))
    throw ValidationError("scale domain must equal the state interval (" +
                          label_ + ")");
  for (bool upper : {false, true}) {
    const DeclaredBoundary& d = upper ? upper_ : lower_;
    const double b = upper ? interval_.upper() : interval_.lower();
    if (d.kind == BoundaryBehaviorKind::kUnspecified) continue;
    if (!std::isfinite(b))
      throw ValidationError("boundary declaration at an infinite endpoint (" +
                            label_ + ")");
    const auto atom = speed_.atom_mass_at(b);
    switch (d.kind) {
      case BoundaryBehaviorKind::kStickyReflecting:
        if (!atom || *atom != d.sticky_mass || !std::isfinite(d.sticky_mass))
          throw ValidationError(
              "sticky boundary requires a matching finite speed atom (" +
              label_ + ")");
        break;
      case BoundaryBehaviorKind::kInstantaneouslyReflecting:
        if (atom)
          throw ValidationError(
              "instantaneous reflection requires m({b}) = 0 (" + label_ + ")");
        break;
      case BoundaryBehaviorKind::kAbsorbing:
        // Explicit absorption declaration or infinite atom mass; both fine.
        break;
      case BoundaryBehaviorKind::kUnspecified:
        break;
    }
  }
  for (const auto& atom : speed_.atoms()) {
    if (!interval_.contains(atom.location))
      throw ValidationError("speed atom outside the closed state interval (" +
                            label_ + ")");
  }
}

double counterexample_density(double x) { return dyadic_spike::value(x); }

namespace {

// Atom mass for the dyadic stress models: nominally 1/n^2, represented as
// the double nearest 1/n^2 for which the chained products
// 2^-n * (n 2^n * mass) and n * mass both evaluate to fl(1/n) in double
// arithmetic. Keeps the divergent-series evidence of the companion measure
// bit-identical to the closed-form harmonic sums.
double dyadic_atom_mass(int n) {
  const double nn = double(n) * double(n);
  const double target = 1.0 / double(n);
  double w = 1.0 / nn;
  if (double(n) * w == target) return w;
  for (int step = 1; step <= 4; ++step) {
    for (double dir : {1.0, -1.0}) {
      double cand = w;
      for (int i = 0; i < step; ++i)
        cand = std::nextafter(cand, dir > 0 ? kInf : -kInf);
      if (double(n) * cand == target) return cand;
    }
  }
  return w;
}

std::vector<SpeedAtom> dyadic_atoms(bool two_sided) {
  std::vector<SpeedAtom> atoms;
  for (int n = 1; n <= kCounterexampleAtomCount; ++n) {
    const double x = std::ldexp(1.0, -n);
    const double mass = dyadic_atom_mass(n);
    atoms.push_back({x, mass});
    if (two_sided) atoms.push_back({-x, mass});
  }
  return atoms;
}

}  // namespace

DiffusionModel builtin(const std::string& name, const BuiltinParams& p) {
  if (name == "brownian") {
    return {StateInterval::whole_line(),
            ScaleFunction::natural(StateInterval::whole_line()),
            SpeedMeasure(SpeedDensity::lebesgue(), {}),
            {},
            {},
            "brownian"};
  }
  if (name == "sticky_bm") {
    if (!(p.rho > 0.0)) throw BadParam("sticky_bm needs rho > 0");
    return {StateInterval::whole_line(),
            ScaleFunction::natural(StateInterval::whole_line()),
            SpeedMeasure(SpeedDensity::lebesgue(), {{0.0, p.rho}}),
            {},
            {},
            "sticky_bm(rho=" + std::to_string(p.rho) + ")"};
  }
  if (name == "skew_bm") {
    if (!(p.alpha > 0.0 && p.alpha < 1.0) || p.alpha == 0.5)
      throw BadParam("skew_bm needs alpha in (0,1) \\ {1/2}");
    const StateInterval line = StateInterval::whole_line();
    // m(dx) = dx / v_alpha with v = 1-alpha on [0, inf), alpha on (-inf, 0)
    return {line, ScaleFunction::skew_piecewise(p.alpha, line),
            SpeedMeasure(
                SpeedDensity::piecewise(0.0, 1.0 / p.alpha, 1.0 / (1.0 - p.alpha)),
                {}),
            {},
            {},
            "skew_bm(alpha=" + std::to_string(p.alpha) + ")"};
  }
  if (name == "absorbed_ito") {
    StateInterval itv{p.lower, p.upper, false, false};
    const Coefficient mu = Coefficient::constant(p.mu0);
    const Coefficient sigma = p.sigma_linear ? Coefficient::linear(p.sigma0)
                                             : Coefficient::constant(p.sigma0);
    ScaleFunction s = scale_from_coefficients(mu, sigma, itv, p.anchor);
    SpeedMeasure m = speed_from_coefficients(mu, sigma, s);
    DeclaredBoundary lower_decl, upper_decl;
    // Accessible boundaries of the Ito family are stipulated absorbing.
    if (std::isfinite(p.lower)) lower_decl = {BoundaryBehaviorKind::kAbsorbing, 0.0};
    if (std::isfinite(p.upper)) upper_decl = {BoundaryBehaviorKind::kAbsorbing, 0.0};
    return {itv, std::move(s), std::move(m), lower_decl, upper_decl,
            "absorbed_ito(mu=" + std::to_string(p.mu0) +
                (p.sigma_linear ? ", sigma=x" : ", sigma=" + std::to_string(p.sigma0)) +
                ")"};
  }
  if (name == "counterexample_nondc") {
    return {StateInterval::whole_line(), ScaleFunction::counterexample_log(true),
            SpeedMeasure(SpeedDensity::lebesgue(), dyadic_atoms(true)),
            {},
            {},
            "counterexample_nondc"};
  }
  if (name == "counterexample_reflecting") {
    const StateInterval half = StateInterval::half_line_closed_at_zero();
    return {half, ScaleFunction::counterexample_log(false),
            SpeedMeasure(SpeedDensity::lebesgue(), dyadic_atoms(false)),
            {BoundaryBehaviorKind::kInstantaneouslyReflecting, 0.0},
            {},
            "counterexample_reflecting"};
  }
  throw UnknownModel(name);
}

std::vector<std::string> builtin_names() {
  return {"brownian",           "sticky_bm",
          "skew_bm",            "absorbed_ito",
          "counterexample_nondc", "counterexample_reflecting"};
}

std::vector<DiffusionModel> builtin_catalog() {
  BuiltinParams p;
  p.rho = 2.0;
  p.alpha = 0.3;
  std::vector<DiffusionModel> out;
  for (const auto& name : builtin_names()) out.push_back(builtin(name, p));
  return out;
}

}  // namespace gdm
