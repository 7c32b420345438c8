// Copyright 2026 The momint authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "momint/experiment.hpp"

namespace momint {

enum class PlotKind { fvals_loglog, trajectory_2d };

// Emits a self-contained SVG line plot (axes, decade ticks, one polyline per
// method, legend) with no external dependencies.
//   fvals_loglog:  f(x_k) - f* (or raw f(x_k) when no exact global value is
//                  recorded) against k >= 1, log-log; nonpositive values are
//                  clipped at 1e-300 and counted as warnings (reported on
//                  stderr and as an SVG comment).
//   trajectory_2d: the (x1, x2) path per method; requires dim == 2.
// Returns the path written. Throws std::runtime_error on IO failure and
// std::domain_error for trajectory_2d on non-2d objectives.
std::string render_plot(const RunRecord& rec, PlotKind kind,
                        const std::string& path);

}  // namespace momint
