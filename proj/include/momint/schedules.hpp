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
#include <vector>

namespace momint {

// Continuous-time coefficient pair a(t), b(t) of a damped kinetic/potential
// rescaling, together with the damping nu = a'/a and the continuous rate
// eta_c = b/a. epsilon is a force scale that is stored for documentation but
// not consumed by the discrete families.
struct ContinuousCoefficients {
  std::function<double(double)> a;
  std::function<double(double)> b;
  std::function<double(double)> nu;
  std::function<double(double)> eta_c;
  double epsilon = 1.0;
};

// Exponent functions alpha, beta, gamma of the time-rescaled Lagrangian
// ansatz; validity is checked by verify_ideal_scaling.
struct ExponentTriple {
  std::function<double(double)> alpha;
  std::function<double(double)> beta;
  std::function<double(double)> gamma;
};

// Per-step coefficients (mu_k, eta_k) of the two-step momentum schemes.
// first_step is the first index at which the pair is usable; eta below
// first_step is treated as zero by consumers (see eta_at), and the first
// momentum application is always k=1 (mu(0) is defined but never consumed).
// Immutable after construction; evaluation is pure.
struct SchemeCoefficients {
  std::function<double(long)> mu;
  std::function<double(long)> eta;
  long first_step = 0;
};

// Weights of the discrete Lagrangian
//   L^k(z0,z1) = a_k/2 ||z1-z0||^2 - b_k^- f(z0) - b_{k+1}^+ f(z1),
// with the paired discrete forces proportional to b_k^- + b_k^+. a_seq(k) must
// never be zero on the range in use.
struct DiscreteLagrangianCoefficients {
  std::function<double(long)> a_seq;
  std::function<double(long)> b_minus;
  std::function<double(long)> b_plus;
};

// One row of the trapezoidal discretization of continuous coefficients.
struct DiscreteTriple {
  double a = 0;
  double b_minus = 0;
  double b_plus = 0;
};

struct IdealScalingReport {
  bool gamma_ok = false;        // gamma' = exp(alpha) within 1e-4
  bool beta_ok = false;         // beta' <= exp(alpha) + 1e-4
  double max_gamma_defect = 0;  // max |gamma' - exp(alpha)| over interior grid
};

// eta(k), or 0 for k below the schedule's first usable step. All consumers of
// a schedule's learning rate go through this accessor.
double eta_at(const SchemeCoefficients& s, long k);

// First-order Taylor remainder of phi: phi(x) - phi(y) - <grad_phi(y), x - y>.
// Nonnegative (up to rounding) when phi is convex. Throws on length mismatch.
double bregman_divergence(
    const std::function<double(const Eigen::VectorXd&)>& phi,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad_phi,
    const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Checks gamma'(t) = exp(alpha(t)) and beta'(t) <= exp(alpha(t)) at interior
// grid points via central differences on the grid (tolerance 1e-4). The grid
// must be strictly increasing with at least 3 points.
IdealScalingReport verify_ideal_scaling(const ExponentTriple& exp,
                                        const std::vector<double>& t_grid);

// mu(k) = (k^n + (k-1)^n) / (k^n + (k+1)^n), eta(k) = 2 k^n/(k^n+(k+1)^n) h^2,
// evaluated as ratios of (1 -+ 1/k)^n so arbitrarily large k cannot overflow.
// first_step = 0 with eta(0) = 0; mu(0) evaluates to (-1)^n and is unused
// (momentum first applies at k=1). `asymptotic` swaps in the simplified
// large-k forms mu = (2k-n)/(2k+n), eta = 2k/(2k+n) h^2.
SchemeCoefficients classical_schedule(long n, double h, bool asymptotic = false);

// Same mu as classical_schedule; eta(k) = D * 2 k^n/(k^n+(k+1)^n) *
// t_k^{n-3} * h^2 with t_k = k h. Requires n >= 3.
SchemeCoefficients wwj_schedule(long n, double D, double h,
                                bool asymptotic = false);

// mu(k) = ((2k-1)/(2k+1))^n and
// eta(k) = D * (1 + r^{2n-3})/2 * t_{k+1/2}^{n-3} * h^2 with r = (2k-1)/(2k+1)
// and t_{k+1/2} = (k+1/2) h; first_step = 1. `asymptotic` replaces the eta
// prefactor by 2k/(2k+2n-3) (mu stays exact; no simplified form is specified).
SchemeCoefficients bjw_schedule(long n, double D, double h,
                                bool asymptotic = false);

// mu(k) = (1+exp(-lambda h))/(1+exp(lambda h)) -- algebraically equal to
// exp(-lambda h) -- and eta(k) = 2 h^2/(1+exp(lambda h)), constant in k.
SchemeCoefficients constant_schedule(double lambda, double h);

// mu(k+1) = a_k / a_{k+1}, eta(k) = (b_k^- + b_k^+) / a_k. mu(0) is the unused
// slot and returns 1. Throws std::domain_error when a_seq vanishes.
SchemeCoefficients scheme_from_lagrangian(
    const DiscreteLagrangianCoefficients& c);

// a_0 = 1, a_{k+1} = a_k / mu_{k+1}, b_k^± = a_k eta_k / 2, tabulated for
// 0 <= k <= k_max (queries beyond the table throw std::out_of_range). For k
// below s.first_step the potential weights b_k^± are zero. Throws
// std::domain_error when some mu(k) in [1, k_max] is zero or non-finite.
DiscreteLagrangianCoefficients lagrangian_from_scheme(
    const SchemeCoefficients& s, long k_max);

// Trapezoidal discretization of continuous coefficients at index k:
// a_k = (a(t) + a(t+h)) / (2 h^2), b_k^- = b_k^+ = b(t)/2, t = k h.
DiscreteTriple lagrangian_from_continuous(const ContinuousCoefficients& cc,
                                          double h, long k);

// Convenience wrapper exposing the trapezoidal discretization as coefficient
// sequences.
DiscreteLagrangianCoefficients discretize_continuous(
    const ContinuousCoefficients& cc, double h);

// Builds a(t) = exp(integral of nu from t_grid.front() to t) by cumulative
// composite Simpson quadrature (one endpoint-midpoint-endpoint rule per grid
// cell, partial cell for off-node t), and b(t) = a(t) eta_c(t). Accuracy is
// governed by the grid spacing. t below the grid start is a domain error;
// t beyond the grid end integrates one trailing cell.
ContinuousCoefficients continuous_from_damped_ode(
    std::function<double(double)> nu, std::function<double(double)> eta_c,
    const std::vector<double>& t_grid, double epsilon = 1.0);

}  // namespace momint
