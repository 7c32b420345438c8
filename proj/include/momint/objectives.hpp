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

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace momint {

enum class MinimumKind { global, local };

// Known stationary-point metadata. `approximate` marks locations that are only
// known roughly (e.g. read off a plot); such entries are never asserted with
// tight tolerances.
struct Minimum {
  Eigen::VectorXd location;
  MinimumKind kind = MinimumKind::local;
  std::optional<double> value;  // exact objective value, when known
  bool approximate = false;
};

// A smooth scalar objective with analytic gradient and optional Hessian.
// Immutable value object after construction; evaluation is pure and re-entrant,
// so objectives may be shared freely across threads.
struct Objective {
  std::string name;
  Eigen::Index dim = 0;
  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
  // Empty std::function when no analytic Hessian is available.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hess;
  std::vector<Minimum> minima;
};

// Samples for the 1-D logistic-regression objective: scalar inputs x_i with
// labels y_i in [0,1], equal lengths, at least one sample.
struct Dataset {
  std::vector<double> inputs;
  std::vector<double> labels;
};

// Numerically stable logistic function 1/(1+exp(-s)).
double logistic(double s);

// Synthetic default: 21 inputs evenly spaced in [-5,5], labels
// round(logistic(x)) in {0,1}.
Dataset make_default_dataset();

// Loads a two-column CSV with header "x,y". Throws std::runtime_error with the
// offending line number on malformed input.
Dataset load_dataset_csv(const std::string& path);

// f(x) = 0.5 <x, S^-1 x> where S^-1 is the tridiagonal inverse of the
// correlation matrix S_ij = rho^|i-j|: diagonal (1, 1+rho^2, ..., 1+rho^2, 1),
// off-diagonal -rho, all divided by (1-rho^2). Requires 0 < rho < 1, n >= 1.
Objective make_quadratic(double rho, Eigen::Index n);

// f(x) = sum_{i<n} (1-x_i)^2 + 100 (x_{i+1} - x_i^2)^2, n >= 2. Global minimum
// at (1,...,1); for n >= 4 a further local minimum sits near (-1,1,...,1).
Objective make_rosenbrock(Eigen::Index n);

// f(x,y) = sin(2x^2 - y^2 + 3) cos(x + 1 - exp(2y)), dim 2, bounded by 1 in
// absolute value; highly multimodal with local minima near (-0.12, 0.18) and
// (0.32, 1.60) (both approximate).
Objective make_yatf();

// Mean squared error of a 1-D logistic model: f(a,b) =
// (1/n) sum_i (logistic(a x_i + b) - y_i)^2, parameters theta = (a, b).
Objective make_logreg(const Dataset& data);

// Max over coordinates of |central-difference - analytic| / max(1, |analytic|)
// at x with the given step. Throws std::invalid_argument on dimension
// mismatch or non-positive step.
double check_gradient(const Objective& obj, const Eigen::VectorXd& x,
                      double step = 1e-6);

}  // namespace momint
