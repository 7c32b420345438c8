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

#include "momint/integrators.hpp"
#include "momint/objectives.hpp"
#include "momint/schedules.hpp"

namespace momint {

// A configuration/momentum pair (x, p), equal lengths.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
};

// Result of a symplecticity check at one phase point.
struct SymplecticityReport {
  double defect = 0.0;  // max-abs entry of J^T Omega J - Omega
  double fd_step = 0.0;
  PhasePoint point;
};

// Left discrete Legendre transform: (z0, -D1 L^k(z0,z1)) =
// (z0, a_k (z1 - z0) + b_k^- grad f(z0)).
PhasePoint legendre_minus(const DiscreteLagrangianCoefficients& coeffs,
                          const Objective& obj, const Eigen::VectorXd& z0,
                          const Eigen::VectorXd& z1, long k);

// Right discrete Legendre transform: (z1, D2 L^k(z0,z1)) =
// (z1, a_k (z1 - z0) - b_{k+1}^+ grad f(z1)).
PhasePoint legendre_plus(const DiscreteLagrangianCoefficients& coeffs,
                         const Objective& obj, const Eigen::VectorXd& z0,
                         const Eigen::VectorXd& z1, long k);

// One-step phase-space map: inverts legendre_minus for z1 (explicit here:
// z1 = z0 + (p - b_k^- grad f(z0))/a_k) and applies legendre_plus. With
// forced == true the paired discrete forces are folded in (this "control"
// variant is NOT expected to be symplectic; it exists as a negative control
// and requires k >= 1 since the force couples a_{k-1}). Throws
// std::domain_error when a_k = 0.
PhasePoint hamiltonian_step(const DiscreteLagrangianCoefficients& coeffs,
                            const Objective& obj, const PhasePoint& pt, long k,
                            bool forced = false);

// Builds the 2d x 2d Jacobian J of hamiltonian_step at pt by central finite
// differences and returns the max-abs entry of J^T Omega J - Omega, with
// Omega the canonical antisymmetric pairing. forced selects the forced map
// (negative control).
SymplecticityReport symplecticity_defect(
    const DiscreteLagrangianCoefficients& coeffs, const Objective& obj,
    const PhasePoint& pt, long k, double fd_step = 1e-5, bool forced = false);

// Max over interior k of the scaled norm of
//   D1 L^k(x_k, x_{k+1}) + D2 L^{k-1}(x_{k-1}, x_k)
//   [ + (F^k)^-(x_k, x_{k+1}) + (F^{k-1})^+(x_{k-1}, x_k)  when forced ],
// the residual of the (forced) discrete Euler-Lagrange equations along the
// trajectory. Scale: max(1, ||a_k dx_k||, ||a_{k-1} dx_{k-1}||), since a_k
// grows like k^n/h^2 and absolute residuals inflate. The trajectory needs at
// least 3 records with consecutive k.
double del_residual(const Trajectory& traj,
                    const DiscreteLagrangianCoefficients& coeffs,
                    const Objective& obj, bool forced);

}  // namespace momint
