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

#include "gdm/coefficients.hpp"

#include <cmath>

namespace gdm {

Coefficient Coefficient::constant(double c) {
  return Coefficient(Kind::kConstant, c, "const(" + std::to_string(c) + ")",
                     [c](double) { return c; });
}

Coefficient Coefficient::linear(double slope) {
  return Coefficient(Kind::kLinear, slope,
                     "linear(" + std::to_string(slope) + ")",
                     [slope](double x) { return slope * x; });
}

Coefficient Coefficient::custom(std::string label,
                                std::function<double(double)> fn) {
  return Coefficient(Kind::kCustom, 0.0, std::move(label), std::move(fn));
}

double Coefficient::operator()(double x) const { return fn_(x); }

}  // namespace gdm
