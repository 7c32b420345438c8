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

#include "momint/integrators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace momint {

namespace {

void check_point(const Objective& obj, const Eigen::VectorXd& x,
                 const char* where) {
  if (x.size() != obj.dim) {
    throw std::invalid_argument(std::string(where) + ": point has dimension " +
                                std::to_string(x.size()) + ", objective needs " +
                                std::to_string(obj.dim));
  }
}

Eigen::VectorXd finite_grad(const Objective& obj, const Eigen::VectorXd& x,
                            const char* where) {
  Eigen::VectorXd g = obj.grad(x);
  if (!g.allFinite()) {
    throw NumericalError(std::string(where) + ": non-finite gradient");
  }
  return g;
}

}  // namespace

Eigen::VectorXd gd_step(const Objective& obj, const Eigen::VectorXd& x,
                        double eta_k) {
  check_point(obj, x, "gd_step");
  return x - eta_k * finite_grad(obj, x, "gd_step");
}

StepPair cm_step(const Objective& obj, const OptimizerState& state,
                 double mu_k, double eta_k) {
  if (state.method != Method::cm) {
    throw std::invalid_argument("cm_step: state.method is not cm");
  }
  check_point(obj, state.x_curr, "cm_step");
  check_point(obj, state.x_prev, "cm_step");
  StepPair out;
  out.y_next = state.x_curr - eta_k * finite_grad(obj, state.x_curr, "cm_step");
  out.x_next = out.y_next + mu_k * (state.x_curr - state.x_prev);
  return out;
}

StepPair nag_step(const Objective& obj, const OptimizerState& state,
                  double mu_k, double eta_k) {
  if (state.method != Method::nag) {
    throw std::invalid_argument("nag_step: state.method is not nag");
  }
  check_point(obj, state.x_curr, "nag_step");
  check_point(obj, state.x_prev, "nag_step");
  StepPair out;
  out.y_next =
      state.x_curr - eta_k * finite_grad(obj, state.x_curr, "nag_step");
  out.x_next = out.y_next + mu_k * (out.y_next - state.x_prev);
  return out;
}

Trajectory run(const Objective& obj, Method method,
               const SchemeCoefficients& schedule, const Eigen::VectorXd& x0,
               const StopRule& stop, long every) {
  check_point(obj, x0, "run");
  if (every < 1) {
    throw std::invalid_argument("run: every must be >= 1");
  }
  if (stop.max_iters < 0) {
    throw std::invalid_argument("run: max_iters must be >= 0");
  }
  const double bound = stop.divergence_bound;
  auto blows_up = [bound](const Eigen::VectorXd& x, double f) {
    return !x.allFinite() || !std::isfinite(f) ||
           x.cwiseAbs().maxCoeff() > bound || std::abs(f) > bound;
  };

  Trajectory traj;
  const bool is_nag = method == Method::nag;
  Eigen::VectorXd x_prev = x0;  // x_{k-1} (cm) / unused (gd)
  Eigen::VectorXd y_curr = x0;  // y_k (nag)
  Eigen::VectorXd x_curr = x0;
  long recorded_k = -1;
  auto record = [&](long k, const Eigen::VectorXd& x, double f, double gn) {
    traj.records.push_back({k, x, f, gn});
    if (is_nag) traj.companion_y.push_back(y_curr);
    recorded_k = k;
  };

  double f_curr = obj.f(x_curr);
  double gn_curr = obj.grad(x_curr).norm();
  record(0, x_curr, f_curr, gn_curr);
  if (blows_up(x_curr, f_curr)) {
    traj.diverged = true;
    traj.diverged_step = 0;
    traj.stop_reason = "diverged";
    return traj;
  }
  if (stop.grad_tol > 0.0 && gn_curr <= stop.grad_tol) {
    traj.stop_reason = "grad_tol";
    return traj;
  }

  for (long k = 0; k < stop.max_iters; ++k) {
    Eigen::VectorXd x_next, y_next;
    double f_next, gn_next;
    try {
      if (k == 0 && method != Method::gd) {
        // Two-step heads: x_1 = x_0 and, for NAG, a plain gradient tail.
        x_next = x_curr;
        if (is_nag) {
          y_next = x_curr -
                   eta_at(schedule, 0) * finite_grad(obj, x_curr, "run");
        }
      } else if (method == Method::gd) {
        x_next = gd_step(obj, x_curr, eta_at(schedule, k));
      } else {
        OptimizerState st{k, is_nag ? y_curr : x_prev, x_curr, method};
        StepPair sp = is_nag
                          ? nag_step(obj, st, schedule.mu(k),
                                     eta_at(schedule, k))
                          : cm_step(obj, st, schedule.mu(k),
                                    eta_at(schedule, k));
        x_next = sp.x_next;
        y_next = sp.y_next;
      }
      f_next = obj.f(x_next);
      gn_next = obj.grad(x_next).norm();
    } catch (const NumericalError&) {
      traj.diverged = true;
      traj.diverged_step = k + 1;
      traj.stop_reason = "numerical_error";
      if (recorded_k != k) record(k, x_curr, f_curr, gn_curr);
      return traj;
    }

    const long kn = k + 1;
    const bool div = blows_up(x_next, f_next);
    const bool gtol = stop.grad_tol > 0.0 && gn_next <= stop.grad_tol;
    const bool ftol = stop.f_tol > 0.0 && std::abs(f_next - f_curr) <= stop.f_tol;
    const bool last = kn == stop.max_iters || div || gtol || ftol;

    x_prev = x_curr;
    if (is_nag) y_curr = y_next;
    x_curr = x_next;
    f_curr = f_next;
    gn_curr = gn_next;
    if (kn % every == 0 || last) record(kn, x_curr, f_curr, gn_curr);

    if (div) {
      traj.diverged = true;
      traj.diverged_step = kn;
      traj.stop_reason = "diverged";
      return traj;
    }
    if (gtol) {
      traj.stop_reason = "grad_tol";
      return traj;
    }
    if (ftol) {
      traj.stop_reason = "f_tol";
      return traj;
    }
  }
  traj.stop_reason = "max_iters";
  return traj;
}

Eigen::VectorXd forced_del_step(const DiscreteLagrangianCoefficients& coeffs,
                                const Objective& obj, const Eigen::VectorXd& z0,
                                const Eigen::VectorXd& z1, long k,
                                bool forced) {
  check_point(obj, z0, "forced_del_step");
  check_point(obj, z1, "forced_del_step");
  if (k < 0) {
    throw std::out_of_range("forced_del_step: negative step index " +
                            std::to_string(k));
  }
  const double a_k = coeffs.a_seq(k);
  const double a_k1 = coeffs.a_seq(k + 1);
  if (a_k1 == 0.0) {
    throw std::domain_error("forced_del_step: a_seq(" + std::to_string(k + 1) +
                            ") is zero");
  }
  const double mu = a_k / a_k1;
  const double eta1 = (coeffs.b_minus(k + 1) + coeffs.b_plus(k + 1)) / a_k1;
  const Eigen::VectorXd g1 = obj.grad(z1);
  Eigen::VectorXd dz1 = mu * (z1 - z0) - eta1 * g1;
  if (forced) {
    if (a_k == 0.0) {
      throw std::domain_error("forced_del_step: a_seq(" + std::to_string(k) +
                              ") is zero");
    }
    const double eta0 = (coeffs.b_minus(k) + coeffs.b_plus(k)) / a_k;
    dz1 += -mu * (eta1 * g1 - eta0 * obj.grad(z0));
  }
  return z1 + dz1;
}

}  // namespace momint
