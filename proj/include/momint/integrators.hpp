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

#include <stdexcept>
#include <string>
#include <vector>

#include "momint/objectives.hpp"
#include "momint/schedules.hpp"

namespace momint {

enum class Method { gd, cm, nag };

// Thrown when a step produces or consumes non-finite values outside run()'s
// supervised loop (run() itself converts failures into a divergence flag).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rolling state of a two-step scheme. For CM, x_prev is x_{k-1}; for NAG it
// carries the companion point y_k instead. Index alignment (worked table):
//
//   k   | consumed        | produced
//   ----+-----------------+---------------------------------------------
//   0   | eta_0 (NAG/GD)  | x_1 = x_0 (CM/NAG head suppressed),
//       |                 | y_1 = x_0 - eta_0 grad f(x_0)   (NAG)
//   k>0 | mu_k, eta_k     | tail y_{k+1} = x_k - eta_k grad f(x_k)
//       |                 | head x_{k+1} = y_{k+1} + mu_k (x_k - x_{k-1})
//       |                 |                      (CM; NAG uses y_k in place
//       |                 |                       of x_{k-1} and y's in the
//       |                 |                       difference)
//
// so the head update at step k uses mu_k = a_{k-1}/a_k and the very first
// momentum application is k=1; mu(0) is never consumed.
struct OptimizerState {
  long k = 0;
  Eigen::VectorXd x_prev;  // x_{k-1} (cm) or y_k (nag)
  Eigen::VectorXd x_curr;  // x_k
  Method method = Method::cm;
};

struct TrajectoryRecord {
  long k = 0;
  Eigen::VectorXd x;
  double fval = 0;
  double gradnorm = 0;
};

// Recorded optimization path. companion_y is populated for NAG only (the
// y-sequence, aligned one-to-one with records). If a stop fired early,
// stop_reason holds one of "max_iters", "grad_tol", "f_tol", "diverged",
// "numerical_error".
struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::vector<Eigen::VectorXd> companion_y;
  bool diverged = false;
  long diverged_step = -1;
  std::string stop_reason;
};

// grad_tol and f_tol are disabled at 0 (fixed-iteration runs are the
// default); divergence_bound aborts the run when ||x||_inf or |f| exceeds it
// or a non-finite value appears.
struct StopRule {
  long max_iters = 1000;
  double grad_tol = 0.0;
  double f_tol = 0.0;
  double divergence_bound = 1e12;
};

// Result of one tail+head update: the new iterate and the tail point.
struct StepPair {
  Eigen::VectorXd x_next;
  Eigen::VectorXd y_next;
};

// x - eta_k grad f(x). Throws NumericalError on a non-finite gradient.
Eigen::VectorXd gd_step(const Objective& obj, const Eigen::VectorXd& x,
                        double eta_k);

// y_{k+1} = x_k - eta_k grad f(x_k); x_{k+1} = y_{k+1} + mu_k (x_k - x_{k-1}).
// Requires state.method == Method::cm.
StepPair cm_step(const Objective& obj, const OptimizerState& state,
                 double mu_k, double eta_k);

// y_{k+1} = x_k - eta_k grad f(x_k); x_{k+1} = y_{k+1} + mu_k (y_{k+1} - y_k),
// with y_k taken from state.x_prev. Requires state.method == Method::nag.
StepPair nag_step(const Objective& obj, const OptimizerState& state,
                  double mu_k, double eta_k);

// Runs gd/cm/nag from x0 until a stop rule fires, recording (k, x, f, ||g||)
// every `every` steps (the initial and final/offending points are always
// recorded). Initialization: x_1 = x_0 for CM and NAG (y_0 = x_0, y_1 = x_0 -
// eta_0 grad f(x_0) for NAG). Deterministic: identical inputs give bitwise
// identical trajectories.
Trajectory run(const Objective& obj, Method method,
               const SchemeCoefficients& schedule, const Eigen::VectorXd& x0,
               const StopRule& stop, long every = 1);

// Advances the discrete Euler-Lagrange two-step recursion: given z_k = z0 and
// z_{k+1} = z1, solves
//   dz1 - mu_{k+1} dz0 + eta_{k+1} grad f(z1) = RHS
// for z2 = z1 + dz1, where RHS = 0 when forced == false and
// RHS = -mu_{k+1} (eta_{k+1} grad f(z1) - eta_k grad f(z0)) when forced ==
// true, with mu/eta derived from the coefficients (mu_{k+1} = a_k/a_{k+1},
// eta_k = (b_k^- + b_k^+)/a_k). Explicit; throws std::domain_error when
// a_{k+1} = 0.
Eigen::VectorXd forced_del_step(const DiscreteLagrangianCoefficients& coeffs,
                                const Objective& obj,
                                const Eigen::VectorXd& z0,
                                const Eigen::VectorXd& z1, long k, bool forced);

}  // namespace momint
