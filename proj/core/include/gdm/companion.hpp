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

#ifndef GDM_COMPANION_HPP
#define GDM_COMPANION_HPP

#include <vector>

#include "gdm/model.hpp"

namespace gdm {

/// Companion speed measure of a model: the density picks up the factor
/// s'_+(x) and every atom mass is scaled by s'_+ at its location. The
/// natural-scale diffusion with this speed, absorbed at accessible
/// boundaries, is the candidate absolutely continuous local martingale law.
/// Throws AtomAtBlowUp when an atom sits where s'_+ blows up.
SpeedMeasure companion_speed(const DiffusionModel& model);

/// Interior points where s'_+ blows up ("bad points" of the companion
/// construction). The shipped scale variants know their singular points
/// a priori; tabulated scales have none by construction.
std::vector<double> scale_blow_up_points(const DiffusionModel& model);

}  // namespace gdm

#endif  // GDM_COMPANION_HPP
