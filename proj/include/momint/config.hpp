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

#include <optional>
#include <string>
#include <vector>

namespace momint {

// Objective selection: name in {quadratic, rosenbrock, yatf, logreg} plus the
// parameters the named objective consumes (others are rejected by the parser).
struct ObjectiveConfig {
  std::string name;
  double rho = 0.9;              // quadratic
  long n = 2;                    // quadratic / rosenbrock dimension
  std::string dataset = "preset";  // logreg: "preset" or a CSV path
  bool operator==(const ObjectiveConfig&) const = default;
};

// One method entry: name in {gd, cm, nag, wwj}. gd/cm/nag take a schedule in
// {classical, wwj, bjw, constant} with its family parameters; method wwj takes
// p/D/N instead (h is shared, from the experiment section).
struct MethodConfig {
  std::string name;
  std::string schedule;   // empty for method wwj
  long n = 3;             // classical / wwj / bjw
  double D = 1.0;         // wwj / bjw schedules, wwj method
  double lambda = 1.0;    // constant schedule
  bool asymptotic = false;
  int p = 2;              // wwj method
  double N = 1.0;         // wwj method sub-problem weight
  std::string label;      // optional; auto-generated when empty
  bool operator==(const MethodConfig&) const = default;
};

// Declarative description of one experiment (shared objective and x0, several
// methods). x0 empty means "use the objective's named preset".
struct ExperimentConfig {
  double h = 0.1;
  long iterations = 1000;
  std::vector<double> x0;
  std::string output_dir = "out";
  long record_stride = 1;
  std::string plot = "none";  // none | svg
  ObjectiveConfig objective;
  std::vector<MethodConfig> methods;
  bool operator==(const ExperimentConfig&) const = default;
};

struct ParseError {
  int line = 0;  // 1-based; 0 when the error is not tied to a line
  std::string message;
};

// Either a fully validated config or the complete list of errors (never just
// the first one).
struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<ParseError> errors;
};

// Parses the section-based `key = value` format documented in the README
// ([experiment] / [objective] / repeated [method] sections, arrays in
// brackets). Unknown keys, type mismatches, and constraint violations are all
// reported with line numbers.
ParseResult parse_config(const std::string& text);

// Reads and parses a config file; a missing/unreadable file becomes a parse
// error with line 0.
ParseResult load_config_file(const std::string& path);

// Canonical text form; parse_config(serialize_config(cfg)) reproduces cfg
// exactly.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace momint
