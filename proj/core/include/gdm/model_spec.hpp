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

#ifndef GDM_MODEL_SPEC_HPP
#define GDM_MODEL_SPEC_HPP

#include <string>

#include "gdm/model.hpp"

namespace gdm {

// Model-spec documents: a structured JSON file describing a diffusion model
// by interval, scale variant, speed density + atoms, and declared boundary
// behaviors. Infinities are spelled "-inf"/"inf"; atom masses may be "inf".
//
// {
//   "interval": {"lower": "-inf", "upper": "inf",
//                "lower_included": false, "upper_included": false},
//   "scale": {"variant": "natural"},
//   "speed": {"density": "lebesgue", "atoms": [{"x": 0.0, "mass": 2.0}]},
//   "boundary": {"lower": "unspecified", "upper": "unspecified"},
//   "label": "sticky"
// }
//
// Scale variants: natural | skew {alpha} | from_coefficients {mu, sigma,
// anchor} | counterexample_log {side: two_sided|half_line} | tabulated
// {grid, values}. Coefficients: {"kind": "const", "value": v} or
// {"kind": "linear", "slope": v}. Densities: "lebesgue", {"kind":
// "piecewise", split, left, right}, {"kind": "table", grid, values}.
// Boundaries: "unspecified" | "absorbing" | "reflecting" |
// {"sticky": mass}.

/// Parses a model-spec JSON document. Throws ParseError with a field path
/// on malformed input and ValidationError when the model violates its
/// invariants.
DiffusionModel load_model_spec_string(const std::string& text);

/// Reads the file and delegates to load_model_spec_string.
DiffusionModel load_model_spec_file(const std::string& path);

}  // namespace gdm

#endif  // GDM_MODEL_SPEC_HPP
