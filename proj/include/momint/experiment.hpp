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

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "momint/config.hpp"
#include "momint/integrators.hpp"
#include "momint/objectives.hpp"
#include "momint/schedules.hpp"

namespace momint {

// Outcome of one method within an experiment. error is empty on success;
// a captured failure never aborts sibling methods.
struct MethodResult {
  std::string label;
  MethodConfig method;
  Trajectory trajectory;
  std::string error;
  double seconds = 0.0;
};

// Config snapshot plus one result per requested method.
struct RunRecord {
  ExperimentConfig config;
  std::vector<MethodResult> results;
};

// Instantiates the configured objective. Throws std::invalid_argument on an
// unknown name or bad parameters.
Objective make_objective(const ObjectiveConfig& oc);

// Instantiates a method's schedule (gd/cm/nag only). Throws on unknown family.
SchemeCoefficients make_schedule(const MethodConfig& mc, double h);

// The preset starting point for an objective: quadratic -> all ones,
// rosenbrock -> origin, yatf -> (-1.0, 0.5), logreg -> (0, 0).
Eigen::VectorXd preset_x0(const Objective& obj);

// Stable auto label for a method entry, e.g. "nag-classical-n3" or "wwj-p2";
// run_experiment deduplicates duplicates with numeric suffixes.
std::string method_label(const MethodConfig& mc);

// Runs every configured method on the shared objective from the shared x0.
// Methods run independently (concurrently when parallel is true); each
// trajectory is deterministic regardless. Per-method failures are captured in
// MethodResult::error.
RunRecord run_experiment(const ExperimentConfig& cfg, bool parallel = true);

// True iff no method errored and no divergence flag is set (drives the CLI
// exit code).
bool record_ok(const RunRecord& rec);

// Writes one CSV per method (header `k,f,gradnorm[,x1..xd]`, 17 significant
// digits, coordinates included iff dim <= 3, rows thinned by
// config.record_stride) plus a manifest.txt echoing the serialized config and
// per-method outcomes. Returns the written paths; throws std::runtime_error
// with path context on IO failure.
std::vector<std::string> write_csv(const RunRecord& rec,
                                   const std::string& dir);

// Number of strict local maxima of the f-sequence after discarding the first
// `skip` entries -- the oscillation metric used to compare methods.
long count_oscillations(const std::vector<double>& f, long skip = 10);

// Names accepted by the config/CLI.
std::vector<std::string> objective_names();
std::vector<std::string> schedule_names();

}  // namespace momint
