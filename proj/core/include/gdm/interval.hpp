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

#ifndef GDM_INTERVAL_HPP
#define GDM_INTERVAL_HPP

#include <cmath>
#include <limits>

#include "gdm/errors.hpp"

namespace gdm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// State interval J of a one-dimensional diffusion. Endpoints may be
/// infinite; an infinite endpoint is never part of the interval.
class StateInterval {
 public:
  StateInterval(double lower, double upper, bool lower_included,
                bool upper_included)
      : lower_(lower),
        upper_(upper),
        lower_included_(lower_included),
        upper_included_(upper_included) {
    if (!(lower < upper)) throw BadParam("interval requires lower < upper");
    if (std::isnan(lower) || std::isnan(upper))
      throw BadParam("interval endpoint is NaN");
    if (std::isinf(lower)) lower_included_ = false;
    if (std::isinf(upper)) upper_included_ = false;
  }

  static StateInterval whole_line() { return {-kInf, kInf, false, false}; }
  static StateInterval half_line_closed_at_zero() {
    return {0.0, kInf, true, false};
  }
  static StateInterval open(double lower, double upper) {
    return {lower, upper, false, false};
  }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  bool lower_included() const { return lower_included_; }
  bool upper_included() const { return upper_included_; }

  bool contains(double x) const {
    if (x < lower_ || x > upper_) return false;
    if (x == lower_) return lower_included_;
    if (x == upper_) return upper_included_;
    return true;
  }

  /// Interior (lower, upper), always nonempty.
  bool interior_contains(double x) const { return x > lower_ && x < upper_; }

  bool lower_finite() const { return std::isfinite(lower_); }
  bool upper_finite() const { return std::isfinite(upper_); }

  bool operator==(const StateInterval& o) const {
    return lower_ == o.lower_ && upper_ == o.upper_ &&
           lower_included_ == o.lower_included_ &&
           upper_included_ == o.upper_included_;
  }

 private:
  double lower_;
  double upper_;
  bool lower_included_;
  bool upper_included_;
};

}  // namespace gdm

#endif  // GDM_INTERVAL_HPP
