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

#include "momint/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace momint {

namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(v));
  }
}

void check_index(long k, const char* where) {
  if (k < 0) {
    throw std::out_of_range(std::string(where) + ": negative step index " +
                            std::to_string(k));
  }
}

// (1 - 1/k)^n and (1 + 1/k)^n; the ratio form keeps k^n out of the floats so
// large k cannot overflow.
double pow_shift(double k, double shift, long n) {
  return std::pow(1.0 + shift / k, static_cast<double>(n));
}

}  // namespace

double eta_at(const SchemeCoefficients& s, long k) {
  return k < s.first_step ? 0.0 : s.eta(k);
}

double bregman_divergence(
    const std::function<double(const Eigen::VectorXd&)>& phi,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad_phi,
    const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("bregman_divergence: length mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  return phi(x) - phi(y) - grad_phi(y).dot(x - y);
}

IdealScalingReport verify_ideal_scaling(const ExponentTriple& exp,
                                        const std::vector<double>& t_grid) {
  if (t_grid.size() < 3) {
    throw std::invalid_argument(
        "verify_ideal_scaling: grid needs at least 3 points");
  }
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] < t_grid[i + 1])) {
      throw std::invalid_argument(
          "verify_ideal_scaling: grid must be strictly increasing");
    }
  }
  const double tol = 1e-4;
  IdealScalingReport rep;
  double max_excess = 0.0;
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
    const double dt = t_grid[i + 1] - t_grid[i - 1];
    const double gdot =
        (exp.gamma(t_grid[i + 1]) - exp.gamma(t_grid[i - 1])) / dt;
    const double bdot =
        (exp.beta(t_grid[i + 1]) - exp.beta(t_grid[i - 1])) / dt;
    const double ea = std::exp(exp.alpha(t_grid[i]));
    rep.max_gamma_defect = std::max(rep.max_gamma_defect, std::abs(gdot - ea));
    max_excess = std::max(max_excess, bdot - ea);
  }
  rep.gamma_ok = rep.max_gamma_defect <= tol;
  rep.beta_ok = max_excess <= tol;
  return rep;
}

SchemeCoefficients classical_schedule(long n, double h, bool asymptotic) {
  if (n < 2) {
    throw std::invalid_argument("classical_schedule: n must be >= 2");
  }
  check_positive(h, "h");
  SchemeCoefficients s;
  s.first_step = 0;
  s.mu = [n, asymptotic](long k) {
    check_index(k, "classical mu");
    // k=0 evaluates the formula's (-1)^n slot; it is never consumed (momentum
    // first applies at k=1).
    if (k == 0) return n % 2 == 0 ? 1.0 : -1.0;
    const double kd = static_cast<double>(k);
    if (asymptotic) return (2.0 * kd - n) / (2.0 * kd + n);
    return (1.0 + pow_shift(kd, -1.0, n)) / (1.0 + pow_shift(kd, 1.0, n));
  };
  s.eta = [n, h, asymptotic](long k) {
    check_index(k, "classical eta");
    if (k == 0) return 0.0;
    const double kd = static_cast<double>(k);
    if (asymptotic) return 2.0 * kd / (2.0 * kd + n) * h * h;
    return 2.0 / (1.0 + pow_shift(kd, 1.0, n)) * h * h;
  };
  return s;
}

SchemeCoefficients wwj_schedule(long n, double D, double h, bool asymptotic) {
  if (n < 3) {
    throw std::invalid_argument("wwj_schedule: n must be >= 3");
  }
  check_positive(D, "D");
  check_positive(h, "h");
  SchemeCoefficients s;
  s.first_step = 0;
  s.mu = classical_schedule(n, h, asymptotic).mu;
  s.eta = [n, D, h, asymptotic](long k) {
    check_index(k, "wwj eta");
    if (k == 0) return 0.0;
    const double kd = static_cast<double>(k);
    const double tk = kd * h;
    const double base = asymptotic ? 2.0 * kd / (2.0 * kd + n)
                                   : 2.0 / (1.0 + pow_shift(kd, 1.0, n));
    return D * base * std::pow(tk, static_cast<double>(n - 3)) * h * h;
  };
  return s;
}

SchemeCoefficients bjw_schedule(long n, double D, double h, bool asymptotic) {
  if (n < 3) {
    throw std::invalid_argument("bjw_schedule: n must be >= 3");
  }
  check_positive(D, "D");
  check_positive(h, "h");
  SchemeCoefficients s;
  s.first_step = 1;
  s.mu = [n](long k) {
    check_index(k, "bjw mu");
    const double r = (2.0 * k - 1.0) / (2.0 * k + 1.0);
    return std::pow(r, static_cast<double>(n));
  };
  s.eta = [n, D, h, asymptotic](long k) {
    check_index(k, "bjw eta");
    const double kd = static_cast<double>(k);
    const double t_half = (kd + 0.5) * h;
    double base;
    if (asymptotic) {
      base = 2.0 * kd / (2.0 * kd + 2.0 * n - 3.0);
    } else {
      const double r = (2.0 * kd - 1.0) / (2.0 * kd + 1.0);
      base = 0.5 * (1.0 + std::pow(r, static_cast<double>(2 * n - 3)));
    }
    return D * base * std::pow(t_half, static_cast<double>(n - 3)) * h * h;
  };
  return s;
}

SchemeCoefficients constant_schedule(double lambda, double h) {
  check_positive(lambda, "lambda");
  check_positive(h, "h");
  // (1+e^{-lh})/(1+e^{lh}) is algebraically e^{-lh}; the ratio form is kept as
  // the definition and agrees with exp(-lambda h) to rounding.
  const double mu = (1.0 + std::exp(-lambda * h)) / (1.0 + std::exp(lambda * h));
  const double eta = 2.0 * h * h / (1.0 + std::exp(lambda * h));
  SchemeCoefficients s;
  s.first_step = 0;
  s.mu = [mu](long k) {
    check_index(k, "constant mu");
    return mu;
  };
  s.eta = [eta](long k) {
    check_index(k, "constant eta");
    return eta;
  };
  return s;
}

SchemeCoefficients scheme_from_lagrangian(
    const DiscreteLagrangianCoefficients& c) {
  SchemeCoefficients s;
  s.first_step = 0;
  s.mu = [c](long k) {
    check_index(k, "scheme_from_lagrangian mu");
    if (k == 0) return 1.0;  // unused slot; a_{-1} does not exist
    const double ak = c.a_seq(k);
    if (ak == 0.0) {
      throw std::domain_error("scheme_from_lagrangian: a_seq(" +
                              std::to_string(k) + ") is zero");
    }
    return c.a_seq(k - 1) / ak;
  };
  s.eta = [c](long k) {
    check_index(k, "scheme_from_lagrangian eta");
    const double ak = c.a_seq(k);
    if (ak == 0.0) {
      throw std::domain_error("scheme_from_lagrangian: a_seq(" +
                              std::to_string(k) + ") is zero");
    }
    return (c.b_minus(k) + c.b_plus(k)) / ak;
  };
  return s;
}

DiscreteLagrangianCoefficients lagrangian_from_scheme(
    const SchemeCoefficients& s, long k_max) {
  if (k_max < 0) {
    throw std::invalid_argument("lagrangian_from_scheme: k_max must be >= 0");
  }
  auto a = std::make_shared<std::vector<double>>();
  auto bm = std::make_shared<std::vector<double>>();
  a->reserve(k_max + 1);
  bm->reserve(k_max + 1);
  a->push_back(1.0);
  for (long k = 1; k <= k_max; ++k) {
    const double m = s.mu(k);
    if (m == 0.0 || !std::isfinite(m)) {
      throw std::domain_error("lagrangian_from_scheme: mu(" +
                              std::to_string(k) + ") = " + std::to_string(m));
    }
    a->push_back(a->back() / m);
  }
  for (long k = 0; k <= k_max; ++k) {
    // No potential weight before the schedule's first usable step; this keeps
    // the converted coefficients consistent with the runner's x_1 = x_0 seed.
    const double b = k < s.first_step ? 0.0 : 0.5 * (*a)[k] * s.eta(k);
    bm->push_back(b);
  }
  auto lookup = [k_max](const std::shared_ptr<std::vector<double>>& v, long k,
                        const char* what) {
    if (k < 0 || k > k_max) {
      throw std::out_of_range(std::string(what) + ": index " +
                              std::to_string(k) + " outside tabulated range [0," +
                              std::to_string(k_max) + "]");
    }
    return (*v)[k];
  };
  DiscreteLagrangianCoefficients c;
  c.a_seq = [a, lookup](long k) { return lookup(a, k, "a_seq"); };
  c.b_minus = [bm, lookup](long k) { return lookup(bm, k, "b_minus"); };
  c.b_plus = [bm, lookup](long k) { return lookup(bm, k, "b_plus"); };
  return c;
}

DiscreteTriple lagrangian_from_continuous(const ContinuousCoefficients& cc,
                                          double h, long k) {
  check_positive(h, "h");
  check_index(k, "lagrangian_from_continuous");
  const double t = k * h;
  DiscreteTriple d;
  d.a = (cc.a(t) + cc.a(t + h)) / (2.0 * h * h);
  d.b_minus = cc.b(t) / 2.0;
  d.b_plus = d.b_minus;
  return d;
}

DiscreteLagrangianCoefficients discretize_continuous(
    const ContinuousCoefficients& cc, double h) {
  check_positive(h, "h");
  DiscreteLagrangianCoefficients c;
  c.a_seq = [cc, h](long k) { return lagrangian_from_continuous(cc, h, k).a; };
  c.b_minus = [cc, h](long k) {
    return lagrangian_from_continuous(cc, h, k).b_minus;
  };
  c.b_plus = [cc, h](long k) {
    return lagrangian_from_continuous(cc, h, k).b_plus;
  };
  return c;
}

ContinuousCoefficients continuous_from_damped_ode(
    std::function<double(double)> nu, std::function<double(double)> eta_c,
    const std::vector<double>& t_grid, double epsilon) {
  if (t_grid.size() < 2) {
    throw std::invalid_argument(
        "continuous_from_damped_ode: grid needs at least 2 points");
  }
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] < t_grid[i + 1])) {
      throw std::invalid_argument(
          "continuous_from_damped_ode: grid must be strictly increasing");
    }
  }
  // Simpson on [lo, hi] with the midpoint node.
  auto simpson = [nu](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (nu(lo) + 4.0 * nu(mid) + nu(hi));
  };
  // Cumulative integral of nu at the grid nodes.
  auto grid = std::make_shared<std::vector<double>>(t_grid);
  auto cum = std::make_shared<std::vector<double>>();
  cum->reserve(grid->size());
  cum->push_back(0.0);
  for (std::size_t i = 0; i + 1 < grid->size(); ++i) {
    cum->push_back(cum->back() + simpson((*grid)[i], (*grid)[i + 1]));
  }
  auto integral = [grid, cum, simpson](double t) {
    if (t < grid->front()) {
      throw std::domain_error(
          "continuous coefficients queried below the grid start t0 = " +
          std::to_string(grid->front()));
    }
    auto it = std::upper_bound(grid->begin(), grid->end(), t);
    const std::size_t j = std::min<std::size_t>(it - grid->begin() - 1,
                                                grid->size() - 1);
    return (*cum)[j] + (t > (*grid)[j] ? simpson((*grid)[j], t) : 0.0);
  };
  ContinuousCoefficients cc;
  cc.nu = nu;
  cc.eta_c = eta_c;
  cc.epsilon = epsilon;
  cc.a = [integral](double t) { return std::exp(integral(t)); };
  cc.b = [integral, eta_c](double t) {
    return std::exp(integral(t)) * eta_c(t);
  };
  return cc;
}

}  // namespace momint
