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

#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "momint/objectives.hpp"
#include "momint/wwj.hpp"

namespace {

using momint::Objective;
using momint::StopRule;
using momint::Trajectory;
using momint::WwjParams;

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

Objective unit_quadratic_1d() { return momint::make_quadratic(0.5, 1); }

Objective zero_objective(Eigen::Index dim) {
  Objective z;
  z.name = "zero";
  z.dim = dim;
  z.f = [](const Eigen::VectorXd&) { return 0.0; };
  z.grad = [dim](const Eigen::VectorXd&) {
    return Eigen::VectorXd(Eigen::VectorXd::Zero(dim));
  };
  z.hess = [dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Zero(dim, dim));
  };
  return z;
}

// 1-D objective with unit gradient everywhere (linear ramp).
Objective ramp_objective() {
  Objective r;
  r.name = "ramp";
  r.dim = 1;
  r.f = [](const Eigen::VectorXd& x) { return x[0]; };
  r.grad = [](const Eigen::VectorXd&) {
    return Eigen::VectorXd(Eigen::VectorXd::Ones(1));
  };
  r.hess = [](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Zero(1, 1));
  };
  return r;
}

// Scalar oracle for the third-order sub-problem on f = x^2/2 at x = 1 with
// N = 1, h = 1: find the root of  1 + u + |u| u = 0  by bisection, entirely
// independent of the Newton solver under test.
double bisect_cubic_oracle() {
  auto F = [](double u) { return 1.0 + u + std::abs(u) * u; };
  double lo = -1.0, hi = 0.0;  // F(-1) = -1, F(0) = 1
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("wwj_y_update p=2: fixed at critical points, hand value elsewhere") {
  WwjParams params;
  params.p = 2;
  params.N = 1.0;
  params.h = 0.1;

  const Objective zero = zero_objective(2);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(2);
  CHECK((momint::wwj_y_update(zero, params, x, 1) - x).cwiseAbs().maxCoeff() ==
        0.0);

  momint::InnerSolveStats stats;
  const Objective q = unit_quadratic_1d();
  const Eigen::VectorXd y = momint::wwj_y_update(q, params, scalar(1.0), 1,
                                                 &stats);
  CHECK(y[0] == doctest::Approx(0.99).epsilon(1e-15));
  CHECK(stats.iterations == 0);  // explicit: no inner solve
  CHECK(stats.residual == 0.0);
}

TEST_CASE("wwj_y_update p=3: matches a bisection oracle on the scalar "
          "quadratic") {
  WwjParams params;
  params.p = 3;
  params.N = 1.0;
  params.h = 1.0;
  momint::InnerSolveStats stats;
  const Objective q = unit_quadratic_1d();
  const Eigen::VectorXd y =
      momint::wwj_y_update(q, params, scalar(1.0), 1, &stats);
  const double expect = 1.0 + bisect_cubic_oracle();
  CHECK(y[0] == doctest::Approx(expect).epsilon(1e-9));
  CHECK(y[0] == doctest::Approx(0.381966).epsilon(1e-6));
  CHECK(stats.iterations > 0);
  CHECK(stats.residual <= 1e-10);
}

TEST_CASE("wwj_y_update p=3: needs a Hessian") {
  WwjParams params;
  params.p = 3;
  Objective no_hess = unit_quadratic_1d();
  no_hess.hess = nullptr;
  CHECK_THROWS_AS(momint::wwj_y_update(no_hess, params, scalar(1.0), 1),
                  std::invalid_argument);
}

TEST_CASE("wwj_y_update p=3: a stalled inner solve raises a convergence "
          "error carrying diagnostics") {
  WwjParams params;
  params.p = 3;
  Objective hostile = ramp_objective();
  hostile.hess = [](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Constant(
        1, 1, std::numeric_limits<double>::quiet_NaN()));
  };
  try {
    momint::wwj_y_update(hostile, params, scalar(1.0), 1);
    FAIL("a non-finite Hessian must stall the inner solve");
  } catch (const momint::ConvergenceError& e) {
    CHECK(e.residual > 1e-10);
    CHECK(e.iterations >= 1);
  }
}

TEST_CASE("wwj_y_update: parameter validation") {
  const Objective q = unit_quadratic_1d();
  WwjParams bad_p;
  bad_p.p = 4;
  CHECK_THROWS_AS(momint::wwj_y_update(q, bad_p, scalar(1.0), 1),
                  std::invalid_argument);
  WwjParams bad_h;
  bad_h.h = 0.0;
  CHECK_THROWS_AS(momint::wwj_y_update(q, bad_h, scalar(1.0), 1),
                  std::invalid_argument);
  WwjParams ok;
  CHECK_THROWS_AS(momint::wwj_y_update(q, ok, Eigen::VectorXd::Zero(2), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(momint::wwj_y_update(q, ok, scalar(1.0), -1),
                  std::out_of_range);
}

TEST_CASE("wwj_z_update: hand values and index validation") {
  const Objective q = unit_quadratic_1d();
  WwjParams p2;
  p2.p = 2;
  p2.D = 1.0;
  p2.h = 0.1;
  // step = D (k/p) t_k^{p-2} h^2 = (3/2)(1)(0.01); gradient at y = 2 is 2.
  CHECK(momint::wwj_z_update(q, p2, scalar(0.0), scalar(2.0), 3)[0] ==
        doctest::Approx(-0.03).epsilon(1e-14));

  WwjParams p3;
  p3.p = 3;
  p3.D = 1.0;
  p3.h = 0.1;
  // step = (3/3)(0.3)(0.01) on a unit gradient.
  CHECK(momint::wwj_z_update(ramp_objective(), p3, scalar(1.0), scalar(5.0),
                             3)[0] == doctest::Approx(0.997).epsilon(1e-14));

  const Objective zero = zero_objective(3);
  const Eigen::VectorXd z = Eigen::VectorXd::Ones(3);
  CHECK((momint::wwj_z_update(zero, p2, z, z, 5) - z).cwiseAbs().maxCoeff() ==
        0.0);

  CHECK_THROWS_AS(momint::wwj_z_update(q, p2, scalar(0.0), scalar(1.0), 0),
                  std::out_of_range);
}

TEST_CASE("wwj_x_update: convex combination cases") {
  WwjParams p2;
  p2.p = 2;
  Eigen::Vector2d z(1.0, 0.0), y(0.0, 1.0);
  const Eigen::VectorXd mid = momint::wwj_x_update(p2, z, y, 2);
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-15));

  // k = 0 puts the whole weight on z.
  const Eigen::VectorXd head = momint::wwj_x_update(p2, z, y, 0);
  CHECK((head - z).cwiseAbs().maxCoeff() == 0.0);

  // Equal inputs are fixed for any weights.
  for (long k : {0L, 1L, 7L}) {
    CHECK((momint::wwj_x_update(p2, y, y, k) - y).cwiseAbs().maxCoeff() == 0.0);
  }

  CHECK_THROWS_AS(momint::wwj_x_update(p2, Eigen::VectorXd::Zero(2),
                                       Eigen::VectorXd::Zero(3), 1),
                  std::invalid_argument);
}

TEST_CASE("wwj_run: second-order scheme converges on the scalar quadratic") {
  WwjParams params;
  params.p = 2;
  params.D = 1.0;
  params.N = 1.0;
  params.h = 0.1;
  StopRule stop;
  stop.max_iters = 5000;
  const Trajectory t =
      momint::wwj_run(unit_quadratic_1d(), params, scalar(1.0), stop, 100);
  CHECK_FALSE(t.diverged);
  CHECK(t.records.back().fval < 1e-4);
}

TEST_CASE("wwj_run: constant at the exact minimum; first step replays x0") {
  WwjParams params;
  params.p = 2;
  params.h = 0.1;
  StopRule stop;
  stop.max_iters = 40;
  const Objective q = momint::make_quadratic(0.9, 2);
  const Trajectory still =
      momint::wwj_run(q, params, Eigen::VectorXd::Zero(2), stop);
  for (const auto& r : still.records) {
    CHECK(r.x.cwiseAbs().maxCoeff() == 0.0);
  }
  const Trajectory t = momint::wwj_run(q, params, Eigen::VectorXd::Ones(2), stop);
  CHECK((t.records[1].x - t.records[0].x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wwj_run: third-order inner solves stay at tolerance along a long "
          "run, and the run matches a manual replay") {
  WwjParams params;
  params.p = 3;
  params.D = 1.0;
  params.N = 1.0;
  params.h = 0.1;
  const Objective q = unit_quadratic_1d();
  const long steps = 1000;
  StopRule stop;
  stop.max_iters = steps;
  const Trajectory t = momint::wwj_run(q, params, scalar(1.0), stop);
  REQUIRE(t.records.size() == std::size_t(steps + 1));

  // Manual replay of the three-sequence recursion, asserting the inner
  // residual at every step.
  Eigen::VectorXd x = scalar(1.0), z = scalar(1.0);
  double worst_gap = 0.0;
  for (long k = 0; k < steps; ++k) {
    Eigen::VectorXd x_next;
    if (k == 0) {
      x_next = x;
    } else {
      momint::InnerSolveStats stats;
      const Eigen::VectorXd y = momint::wwj_y_update(q, params, x, k, &stats);
      CHECK(stats.residual <= 1e-10);
      z = momint::wwj_z_update(q, params, z, y, k);
      x_next = momint::wwj_x_update(params, z, y, k);
    }
    worst_gap = std::max(
        worst_gap,
        (x_next - t.records[std::size_t(k + 1)].x).cwiseAbs().maxCoeff());
    x = x_next;
  }
  CHECK(worst_gap == 0.0);
  CHECK(t.records.back().fval < t.records.front().fval);
}

TEST_CASE("wwj_run: iterates stay in the z-y segment componentwise") {
  WwjParams params;
  params.p = 2;
  params.D = 1.0;
  params.N = 1.0;
  params.h = 0.1;
  const Objective q = momint::make_quadratic(0.7, 2);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(2), z = x;
  for (long k = 1; k <= 200; ++k) {
    const Eigen::VectorXd y = momint::wwj_y_update(q, params, x, k);
    z = momint::wwj_z_update(q, params, z, y, k);
    const Eigen::VectorXd x_next = momint::wwj_x_update(params, z, y, k);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double lo = std::min(z[i], y[i]) - 1e-15;
      const double hi = std::max(z[i], y[i]) + 1e-15;
      CHECK(x_next[i] >= lo);
      CHECK(x_next[i] <= hi);
    }
    x = x_next;
  }
}

TEST_CASE("wwj p=2: closed form solves the sub-problem stationarity system") {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<int> dim_d(1, 5);
  std::uniform_real_distribution<double> rho_d(0.05, 0.9);
  std::uniform_real_distribution<double> x_d(-2.0, 2.0);
  std::uniform_real_distribution<double> h_d(0.05, 0.5);
  WwjParams params;
  params.p = 2;
  params.N = 1.0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = dim_d(rng);
    const Objective q = momint::make_quadratic(rho_d(rng), d);
    Eigen::VectorXd x(d);
    for (Eigen::Index i = 0; i < d; ++i) x[i] = x_d(rng);
    params.h = h_d(rng);
    const Eigen::VectorXd y = momint::wwj_y_update(q, params, x, 1);
    // Independent linear solve of the stationarity system
    //   grad f(x) + (N/h^2) (y - x) = 0.
    const double c = params.N / (params.h * params.h);
    const Eigen::MatrixXd lhs = c * Eigen::MatrixXd::Identity(d, d);
    const Eigen::VectorXd u = lhs.colPivHouseholderQr().solve(-q.grad(x));
    worst = std::max(worst, (y - (x + u)).cwiseAbs().maxCoeff());
    // Residual of the closed form in the stationarity equation itself.
    const double res = (q.grad(x) + c * (y - x)).norm();
    worst = std::max(worst, res / std::max(1.0, q.grad(x).norm()));
  }
  INFO("worst stationarity gap ", worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("wwj p=2: doubling h quadruples the z-displacement at fixed k "
          "and y") {
  const Objective q = unit_quadratic_1d();
  WwjParams small;
  small.p = 2;
  small.D = 1.3;
  small.h = 0.1;
  WwjParams big = small;
  big.h = 0.2;
  const Eigen::VectorXd z_prev = scalar(0.4);
  const Eigen::VectorXd y = scalar(1.7);
  for (long k : {1L, 3L, 10L}) {
    const double d_small = (momint::wwj_z_update(q, small, z_prev, y, k) -
                            z_prev)[0];
    const double d_big = (momint::wwj_z_update(q, big, z_prev, y, k) -
                          z_prev)[0];
    CHECK(d_big == doctest::Approx(4.0 * d_small).epsilon(1e-14));
  }
}

TEST_CASE("wwj_run: oversized steps trip the divergence flag") {
  WwjParams params;
  params.p = 2;
  params.D = 50.0;
  params.N = 1.0;
  params.h = 0.5;
  StopRule stop;
  stop.max_iters = 200;
  const Trajectory t =
      momint::wwj_run(unit_quadratic_1d(), params, scalar(1.0), stop);
  CHECK(t.diverged);
  CHECK(t.stop_reason == "diverged");
  CHECK(t.diverged_step > 0);
}

TEST_CASE("wwj_run: determinism is bitwise") {
  WwjParams params;
  params.p = 2;
  params.h = 0.1;
  StopRule stop;
  stop.max_iters = 500;
  const Objective q = momint::make_quadratic(0.8, 3);
  const Trajectory a = momint::wwj_run(q, params, Eigen::VectorXd::Ones(3), stop);
  const Trajectory b = momint::wwj_run(q, params, Eigen::VectorXd::Ones(3), stop);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK((a.records[i].x - b.records[i].x).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.records[i].fval == b.records[i].fval);
  }
}

TEST_CASE("wwj_run: inner-solver failures propagate with the step index") {
  WwjParams params;
  params.p = 3;
  Objective hostile = ramp_objective();
  hostile.hess = [](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Constant(
        1, 1, std::numeric_limits<double>::quiet_NaN()));
  };
  StopRule stop;
  stop.max_iters = 10;
  CHECK_THROWS_AS(momint::wwj_run(hostile, params, scalar(1.0), stop),
                  momint::ConvergenceError);
}
