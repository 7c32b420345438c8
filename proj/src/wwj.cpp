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

#include "momint/wwj.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace momint {

namespace {

constexpr double kInnerTol = 1e-10;
constexpr int kInnerMaxIters = 100;

void check_params(const WwjParams& p, const char* where) {
  if (p.p != 2 && p.p != 3) {
    throw std::invalid_argument(std::string(where) + ": order p must be 2 or 3");
  }
  if (!(p.D > 0.0) || !(p.N > 0.0) || !(p.h > 0.0)) {
    throw std::invalid_argument(std::string(where) +
                                ": D, N and h must be positive");
  }
}

void check_dim(const Objective& obj, const Eigen::VectorXd& v,
               const char* where) {
  if (v.size() != obj.dim) {
    throw std::invalid_argument(std::string(where) + ": point has dimension " +
                                std::to_string(v.size()) +
                                ", objective needs " + std::to_string(obj.dim));
  }
}

// Damped Newton on the cubically regularized stationarity equation
//   R(u) = g + H u + c ||u|| u = 0,   c = N / h^3,   u = y - x,
// with Jacobian H + c (||u|| I + u u^T / ||u||).
Eigen::VectorXd solve_cubic_subproblem(const Eigen::VectorXd& g,
                                       const Eigen::MatrixXd& H, double c,
                                       InnerSolveStats* stats) {
  const Eigen::Index d = g.size();
  auto residual = [&](const Eigen::VectorXd& u) {
    return (g + H * u + c * u.norm() * u).eval();
  };
  Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd r = g;
  double rn = r.norm();
  int iters = 0;
  while (rn > kInnerTol && iters < kInnerMaxIters) {
    Eigen::MatrixXd J = H;
    const double un = u.norm();
    if (un > 0.0) {
      J += c * (un * Eigen::MatrixXd::Identity(d, d) +
                u * u.transpose() / un);
    }
    const Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-r);
    double scale = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      const Eigen::VectorXd u_try = u + scale * delta;
      const Eigen::VectorXd r_try = residual(u_try);
      const double rt = r_try.norm();
      if (std::isfinite(rt) && rt < rn) {
        u = u_try;
        r = r_try;
        rn = rt;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    ++iters;
    if (!accepted) break;  // step halving exhausted: residual is stuck
  }
  if (stats != nullptr) {
    stats->iterations = iters;
    stats->residual = rn;
  }
  if (!(rn <= kInnerTol)) {
    throw ConvergenceError("inner Newton solve stalled at residual " +
                               std::to_string(rn) + " after " +
                               std::to_string(iters) + " iterations",
                           rn, iters);
  }
  return u;
}

}  // namespace

Eigen::VectorXd wwj_y_update(const Objective& obj, const WwjParams& params,
                             const Eigen::VectorXd& x_k, long k,
                             InnerSolveStats* stats) {
  check_params(params, "wwj_y_update");
  check_dim(obj, x_k, "wwj_y_update");
  if (k < 0) {
    throw std::out_of_range("wwj_y_update: negative step index " +
                            std::to_string(k));
  }
  if (params.p == 2) {
    if (stats != nullptr) {
      stats->iterations = 0;
      stats->residual = 0.0;
    }
    return x_k - params.h * params.h / params.N * obj.grad(x_k);
  }
  if (!obj.hess) {
    throw std::invalid_argument(
        "wwj_y_update: order p = 3 needs an objective with a Hessian");
  }
  const double c = params.N / (params.h * params.h * params.h);
  return x_k + solve_cubic_subproblem(obj.grad(x_k), obj.hess(x_k), c, stats);
}

Eigen::VectorXd wwj_z_update(const Objective& obj, const WwjParams& params,
                             const Eigen::VectorXd& z_prev,
                             const Eigen::VectorXd& y_k, long k) {
  check_params(params, "wwj_z_update");
  check_dim(obj, z_prev, "wwj_z_update");
  check_dim(obj, y_k, "wwj_z_update");
  if (k < 1) {
    throw std::out_of_range("wwj_z_update: step index must be >= 1, got " +
                            std::to_string(k));
  }
  const double t_k = static_cast<double>(k) * params.h;
  const double step = params.D * (static_cast<double>(k) / params.p) *
                      std::pow(t_k, params.p - 2) * params.h * params.h;
  return z_prev - step * obj.grad(y_k);
}

Eigen::VectorXd wwj_x_update(const WwjParams& params,
                             const Eigen::VectorXd& z_k,
                             const Eigen::VectorXd& y_k, long k) {
  check_params(params, "wwj_x_update");
  if (z_k.size() != y_k.size()) {
    throw std::invalid_argument("wwj_x_update: length mismatch");
  }
  if (k < 0) {
    throw std::out_of_range("wwj_x_update: negative step index " +
                            std::to_string(k));
  }
  const double w = static_cast<double>(params.p) / (k + params.p);
  return w * z_k + (1.0 - w) * y_k;
}

Trajectory wwj_run(const Objective& obj, const WwjParams& params,
                   const Eigen::VectorXd& x0, const StopRule& stop,
                   long every) {
  check_params(params, "wwj_run");
  check_dim(obj, x0, "wwj_run");
  if (every < 1) {
    throw std::invalid_argument("wwj_run: every must be >= 1");
  }
  if (stop.max_iters < 0) {
    throw std::invalid_argument("wwj_run: max_iters must be >= 0");
  }
  if (params.p == 3) {
    std::fprintf(stderr,
                 "wwj_run: note: p = 3 solves a regularized sub-problem by "
                 "Newton iteration at every step and is much slower than "
                 "p = 2\n");
  }
  const double bound = stop.divergence_bound;
  auto blows_up = [bound](const Eigen::VectorXd& x, double f) {
    return !x.allFinite() || !std::isfinite(f) ||
           x.cwiseAbs().maxCoeff() > bound || std::abs(f) > bound;
  };

  Trajectory traj;
  Eigen::VectorXd x_curr = x0;
  Eigen::VectorXd z = x0;  // z_{k-1} entering step k
  long recorded_k = -1;
  auto record = [&](long k, const Eigen::VectorXd& x, double f, double gn) {
    traj.records.push_back({k, x, f, gn});
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
    Eigen::VectorXd x_next;
    double f_next, gn_next;
    // x_{k+1} = p/(k+p) z_k + k/(k+p) y_k; at k = 0 this is z_0 = x_0.
    if (k == 0) {
      x_next = x_curr;
      f_next = f_curr;
      gn_next = gn_curr;
    } else {
      Eigen::VectorXd y;
      try {
        y = wwj_y_update(obj, params, x_curr, k);
      } catch (const ConvergenceError& e) {
        if (recorded_k != k) record(k, x_curr, f_curr, gn_curr);
        throw ConvergenceError(std::string(e.what()) + " (step " +
                                   std::to_string(k) + ")",
                               e.residual, e.iterations);
      }
      z = wwj_z_update(obj, params, z, y, k);
      x_next = wwj_x_update(params, z, y, k);
      f_next = obj.f(x_next);
      gn_next = obj.grad(x_next).norm();
    }

    const long kn = k + 1;
    const bool div = blows_up(x_next, f_next);
    const bool gtol = stop.grad_tol > 0.0 && gn_next <= stop.grad_tol;
    const bool ftol =
        stop.f_tol > 0.0 && std::abs(f_next - f_curr) <= stop.f_tol;
    const bool last = kn == stop.max_iters || div || gtol || ftol;

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

}  // namespace momint
