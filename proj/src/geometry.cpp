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

#include "momint/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace momint {

namespace {

void check_dim(const Objective& obj, const Eigen::VectorXd& v,
               const char* where) {
  if (v.size() != obj.dim) {
    throw std::invalid_argument(std::string(where) + ": point has dimension " +
                                std::to_string(v.size()) +
                                ", objective needs " + std::to_string(obj.dim));
  }
}

void check_k(long k, const char* where) {
  if (k < 0) {
    throw std::out_of_range(std::string(where) + ": negative step index " +
                            std::to_string(k));
  }
}

double nonzero_a(const DiscreteLagrangianCoefficients& coeffs, long k,
                 const char* where) {
  const double a = coeffs.a_seq(k);
  if (a == 0.0) {
    throw std::domain_error(std::string(where) + ": a_seq(" +
                            std::to_string(k) + ") is zero");
  }
  return a;
}

}  // namespace

PhasePoint legendre_minus(const DiscreteLagrangianCoefficients& coeffs,
                          const Objective& obj, const Eigen::VectorXd& z0,
                          const Eigen::VectorXd& z1, long k) {
  check_dim(obj, z0, "legendre_minus");
  check_dim(obj, z1, "legendre_minus");
  check_k(k, "legendre_minus");
  PhasePoint pt;
  pt.x = z0;
  pt.p = coeffs.a_seq(k) * (z1 - z0) + coeffs.b_minus(k) * obj.grad(z0);
  return pt;
}

PhasePoint legendre_plus(const DiscreteLagrangianCoefficients& coeffs,
                         const Objective& obj, const Eigen::VectorXd& z0,
                         const Eigen::VectorXd& z1, long k) {
  check_dim(obj, z0, "legendre_plus");
  check_dim(obj, z1, "legendre_plus");
  check_k(k, "legendre_plus");
  PhasePoint pt;
  pt.x = z1;
  pt.p = coeffs.a_seq(k) * (z1 - z0) - coeffs.b_plus(k + 1) * obj.grad(z1);
  return pt;
}

PhasePoint hamiltonian_step(const DiscreteLagrangianCoefficients& coeffs,
                            const Objective& obj, const PhasePoint& pt, long k,
                            bool forced) {
  check_dim(obj, pt.x, "hamiltonian_step");
  check_dim(obj, pt.p, "hamiltonian_step");
  check_k(k, "hamiltonian_step");
  if (forced && k < 1) {
    throw std::invalid_argument(
        "hamiltonian_step: the forced map needs k >= 1");
  }
  const double a_k = nonzero_a(coeffs, k, "hamiltonian_step");
  const Eigen::VectorXd g0 = obj.grad(pt.x);
  Eigen::VectorXd rhs = pt.p - coeffs.b_minus(k) * g0;
  const double b_sum = coeffs.b_minus(k) + coeffs.b_plus(k);
  if (forced) {
    const double mu_k = coeffs.a_seq(k - 1) / a_k;
    rhs -= mu_k * b_sum * g0;
  }
  const Eigen::VectorXd z1 = pt.x + rhs / a_k;
  PhasePoint out = legendre_plus(coeffs, obj, pt.x, z1, k);
  if (forced) out.p += b_sum * g0;
  return out;
}

SymplecticityReport symplecticity_defect(
    const DiscreteLagrangianCoefficients& coeffs, const Objective& obj,
    const PhasePoint& pt, long k, double fd_step, bool forced) {
  check_dim(obj, pt.x, "symplecticity_defect");
  check_dim(obj, pt.p, "symplecticity_defect");
  if (!(fd_step > 0.0)) {
    throw std::invalid_argument("symplecticity_defect: fd_step must be > 0");
  }
  const Eigen::Index d = obj.dim;
  auto map = [&](const Eigen::VectorXd& s) {
    PhasePoint in{s.head(d), s.tail(d)};
    PhasePoint out = hamiltonian_step(coeffs, obj, in, k, forced);
    Eigen::VectorXd flat(2 * d);
    flat << out.x, out.p;
    return flat;
  };
  Eigen::VectorXd s0(2 * d);
  s0 << pt.x, pt.p;
  Eigen::MatrixXd J(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < 2 * d; ++i) {
    Eigen::VectorXd sp = s0, sm = s0;
    sp[i] += fd_step;
    sm[i] -= fd_step;
    J.col(i) = (map(sp) - map(sm)) / (2.0 * fd_step);
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  omega.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  omega.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
  SymplecticityReport rep;
  rep.defect = (J.transpose() * omega * J - omega).cwiseAbs().maxCoeff();
  rep.fd_step = fd_step;
  rep.point = pt;
  return rep;
}

double del_residual(const Trajectory& traj,
                    const DiscreteLagrangianCoefficients& coeffs,
                    const Objective& obj, bool forced) {
  const auto& rec = traj.records;
  if (rec.size() < 3) {
    throw std::invalid_argument(
        "del_residual: need at least 3 trajectory records");
  }
  for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
    if (rec[i + 1].k != rec[i].k + 1) {
      throw std::invalid_argument(
          "del_residual: records must have consecutive step indices");
    }
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
    const long k = rec[i].k;
    const double a_k = coeffs.a_seq(k);
    const double a_km1 = coeffs.a_seq(k - 1);
    const Eigen::VectorXd dx_k = rec[i + 1].x - rec[i].x;
    const Eigen::VectorXd dx_km1 = rec[i].x - rec[i - 1].x;
    Eigen::VectorXd r = -a_k * dx_k + a_km1 * dx_km1 -
                        (coeffs.b_minus(k) + coeffs.b_plus(k)) * obj.grad(rec[i].x);
    if (forced) {
      if (a_k == 0.0) {
        throw std::domain_error("del_residual: a_seq(" + std::to_string(k) +
                                ") is zero");
      }
      r += -(a_km1 / a_k) * (coeffs.b_minus(k) + coeffs.b_plus(k)) *
               obj.grad(rec[i].x) +
           (coeffs.b_minus(k - 1) + coeffs.b_plus(k - 1)) *
               obj.grad(rec[i - 1].x);
    }
    const double scale = std::max(
        {1.0, (a_k * dx_k).norm(), (a_km1 * dx_km1).norm()});
    worst = std::max(worst, r.norm() / scale);
  }
  return worst;
}

}  // namespace momint
