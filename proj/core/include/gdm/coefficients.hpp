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

#ifndef GDM_COEFFICIENTS_HPP
#define GDM_COEFFICIENTS_HPP

#include <functional>
#include <string>
#include <utility>

namespace gdm {

/// Drift or volatility coefficient of an Ito diffusion: a named scalar
/// function of the state. Named kinds round-trip through model-spec files;
/// custom callables are for library use.
class Coefficient {
 public:
  enum class Kind { kConstant, kLinear, kCustom };

  static Coefficient constant(double c);
  /// slope * x
  static Coefficient linear(double slope);
  static Coefficient custom(std::string label, std::function<double(double)> fn);

  double operator()(double x) const;
  Kind kind() const { return kind_; }
  double param() const { return param_; }
  const std::string& label() const { return label_; }

 private:
  Coefficient(Kind kind, double param, std::string label,
              std::function<double(double)> fn)
      : kind_(kind), param_(param), label_(std::move(label)), fn_(std::move(fn)) {}

  Kind kind_;
  double param_;
  std::string label_;
  std::function<double(double)> fn_;
};

}  // namespace gdm

#endif  // GDM_COEFFICIENTS_HPP
