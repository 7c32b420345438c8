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

#include "momint/integrators.hpp"
#include "momint/objectives.hpp"

namespace momint {

// Three-sequence accelerated scheme of order p in {2,3}. D scales the
// z-update; N weighs the regularized-Taylor sub-problem (no closed relation
// to D and p is adopted here -- it is a plain knob, default 1).
struct WwjParams {
  int p = 2;
  double D = 1.0;
  double N = 1.0;
  double h = 0.1;
};

// (x_k, y_k, z_k) with z_0 = y_0 = x_0.
struct WwjState {
  long k = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd z;
};

// Inner-solver diagnostics for the p=3 sub-problem.
struct InnerSolveStats {
  int iterations = 0;
  double residual = 0.0;
};

// Thrown when the p=3 damped Newton solve fails to reach the residual
// tolerance within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual, int iterations)
      : std::runtime_error(msg), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

// Sub-problem argmin_y { f_{p-1}(y; x_k) + N/(p h^p) ||y - x_k||^p } where
// f_{p-1} is the (p-1)-th order Taylor model of f about x_k.
//   p=2: explicit, y = x_k - (h^2/N) grad f(x_k).
//   p=3: damped Newton (step halving on residual increase) on the
//        stationarity equation
//          grad f(x_k) + hess f(x_k) (y-x_k) + (N/h^3) ||y-x_k|| (y-x_k) = 0,
//        from y = x_k, residual 2-norm <= 1e-10, at most 100 iterations;
//        requires obj.hess and throws ConvergenceError on failure.
Eigen::VectorXd wwj_y_update(const Objective& obj, const WwjParams& params,
                             const Eigen::VectorXd& x_k, long k,
                             InnerSolveStats* stats = nullptr);

// z_k = z_{k-1} - D (k/p) t_k^{p-2} h^2 grad f(y_k), t_k = k h, k >= 1.
Eigen::VectorXd wwj_z_update(const Objective& obj, const WwjParams& params,
                             const Eigen::VectorXd& z_prev,
                             const Eigen::VectorXd& y_k, long k);

// x_{k+1} = p/(k+p) z_k + k/(k+p) y_k, a convex combination (k >= 0; at k=0
// the full weight is on z_0).
Eigen::VectorXd wwj_x_update(const WwjParams& params, const Eigen::VectorXd& z_k,
                             const Eigen::VectorXd& y_k, long k);

// Runs the scheme from x0 with z_0 = y_0 = x_0, recording the x-sequence.
// Propagates ConvergenceError (annotated with the step index); divergence is
// flagged exactly as in run().
Trajectory wwj_run(const Objective& obj, const WwjParams& params,
                   const Eigen::VectorXd& x0, const StopRule& stop,
                   long every = 1);

}  // namespace momint
