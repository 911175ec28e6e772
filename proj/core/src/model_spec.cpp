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

#include "gdm/model_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gdm/errors.hpp"

namespace gdm {

namespace {

using nlohmann::json;

double parse_extended(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError(path + ": expected a number, \"inf\" or \"-inf\"");
}

double require_number(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(path + "." + key + ": expected a number");
  return j[key].get<double>();
}

const json& require_field(const json& j, const char* key,
                          const std::string& path) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
  return j[key];
}

std::vector<double> parse_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(path + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Coefficient parse_coefficient(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const std::string kind = require_field(j, "kind", path).get<std::string>();
  if (kind == "const") return Coefficient::constant(require_number(j, "value", path));
  if (kind == "linear") return Coefficient::linear(require_number(j, "slope", path));
  throw ParseError(path + ".kind: unknown coefficient kind '" + kind + "'");
}

StateInterval parse_interval(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const double lo = parse_extended(require_field(j, "lower", path), path + ".lower");
  const double hi = parse_extended(require_field(j, "upper", path), path + ".upper");
  const bool li = j.value("lower_included", false);
  const bool ui = j.value("upper_included", false);
  try {
    return StateInterval{lo, hi, li, ui};
  } catch (const BadParam& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ScaleFunction parse_scale(const json& j, const StateInterval& itv,
                          const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const std::string variant =
      require_field(j, "variant", path).get<std::string>();
  try {
    if (variant == "natural") return ScaleFunction::natural(itv);
    if (variant == "skew")
      return ScaleFunction::skew_piecewise(require_number(j, "alpha", path), itv);
    if (variant == "from_coefficients") {
      return scale_from_coefficients(
          parse_coefficient(require_field(j, "mu", path), path + ".mu"),
          parse_coefficient(require_field(j, "sigma", path), path + ".sigma"),
          itv, require_number(j, "anchor", path));
    }
    if (variant == "counterexample_log") {
      const std::string side = j.value("side", "two_sided");
      if (side != "two_sided" && side != "half_line")
        throw ParseError(path + ".side: expected two_sided or half_line");
      return ScaleFunction::counterexample_log(side == "two_sided");
    }
    if (variant == "tabulated") {
      return ScaleFunction::tabulated(
          parse_array(require_field(j, "grid", path), path + ".grid"),
          parse_array(require_field(j, "values", path), path + ".values"));
    }
  } catch (const BadParam& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ".variant: unknown scale variant '" + variant + "'");
}

SpeedDensity parse_density(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "lebesgue") return SpeedDensity::lebesgue();
    throw ParseError(path + ": unknown density name '" + name + "'");
  }
  if (!j.is_object()) throw ParseError(path + ": expected a name or object");
  const std::string kind = require_field(j, "kind", path).get<std::string>();
  try {
    if (kind == "piecewise")
      return SpeedDensity::piecewise(require_number(j, "split", path),
                                     require_number(j, "left", path),
                                     require_number(j, "right", path));
    if (kind == "table")
      return SpeedDensity::tabulated(
          parse_array(require_field(j, "grid", path), path + ".grid"),
          parse_array(require_field(j, "values", path), path + ".values"));
  } catch (const BadParam& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ".kind: unknown density kind '" + kind + "'");
}

DeclaredBoundary parse_boundary(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "unspecified") return {};
    if (s == "absorbing") return {BoundaryBehaviorKind::kAbsorbing, 0.0};
    if (s == "reflecting")
      return {BoundaryBehaviorKind::kInstantaneouslyReflecting, 0.0};
    throw ParseError(path + ": unknown boundary behavior '" + s + "'");
  }
  if (j.is_object() && j.contains("sticky")) {
    return {BoundaryBehaviorKind::kStickyReflecting,
            require_number(j, "sticky", path)};
  }
  throw ParseError(path + ": expected a behavior name or {\"sticky\": mass}");
}

}  // namespace

DiffusionModel load_model_spec_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");

  const StateInterval itv =
      parse_interval(require_field(j, "interval", "$"), "interval");
  ScaleFunction scale =
      parse_scale(require_field(j, "scale", "$"), itv, "scale");

  const json& sp = require_field(j, "speed", "$");
  if (!sp.is_object()) throw ParseError("speed: expected an object");
  SpeedDensity density =
      parse_density(require_field(sp, "density", "speed"), "speed.density");
  std::vector<SpeedAtom> atoms;
  if (sp.contains("atoms")) {
    if (!sp["atoms"].is_array()) throw ParseError("speed.atoms: expected an array");
    size_t i = 0;
    for (const auto& a : sp["atoms"]) {
      const std::string path = "speed.atoms[" + std::to_string(i++) + "]";
      if (!a.is_object()) throw ParseError(path + ": expected an object");
      const double x = require_number(a, "x", path);
      const double mass =
          parse_extended(require_field(a, "mass", path), path + ".mass");
      atoms.push_back({x, mass});
    }
  }

  DeclaredBoundary lower, upper;
  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    if (!b.is_object()) throw ParseError("boundary: expected an object");
    if (b.contains("lower")) lower = parse_boundary(b["lower"], "boundary.lower");
    if (b.contains("upper")) upper = parse_boundary(b["upper"], "boundary.upper");
  }

  const std::string label = j.value("label", "model");
  return DiffusionModel(itv, std::move(scale),
                        SpeedMeasure(std::move(density), std::move(atoms)),
                        lower, upper, label);
}

DiffusionModel load_model_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model_spec_string(ss.str());
}

}  // namespace gdm
