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

#include "momint/objectives.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace momint {

namespace {

void require_dim(const Objective& obj, const Eigen::VectorXd& x,
                 const char* where) {
  if (x.size() != obj.dim) {
    throw std::invalid_argument(std::string(where) + ": expected dimension " +
                                std::to_string(obj.dim) + ", got " +
                                std::to_string(x.size()));
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void validate_dataset(const Dataset& data) {
  if (data.inputs.empty()) {
    throw std::invalid_argument("logreg dataset: empty");
  }
  if (data.inputs.size() != data.labels.size()) {
    throw std::invalid_argument("logreg dataset: inputs and labels differ in "
                                "length (" +
                                std::to_string(data.inputs.size()) + " vs " +
                                std::to_string(data.labels.size()) + ")");
  }
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    const double y = data.labels[i];
    if (!(y >= 0.0 && y <= 1.0)) {
      throw std::invalid_argument("logreg dataset: label " +
                                  std::to_string(i) + " = " +
                                  std::to_string(y) + " outside [0,1]");
    }
  }
}

}  // namespace

double logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

Dataset make_default_dataset() {
  Dataset data;
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    const double x = -5.0 + 10.0 * i / (n - 1);
    data.inputs.push_back(x);
    data.labels.push_back(std::round(logistic(x)));
  }
  return data;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path);
  }
  Dataset data;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (lineno == 1) {
      if (t != "x,y") {
        throw std::runtime_error(path + ":1: expected header \"x,y\", got \"" +
                                 t + "\"");
      }
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two comma-separated values");
    }
    try {
      std::size_t used = 0;
      const std::string xs = trim(t.substr(0, comma));
      const std::string ys = trim(t.substr(comma + 1));
      const double x = std::stod(xs, &used);
      if (used != xs.size()) throw std::invalid_argument(xs);
      const double y = std::stod(ys, &used);
      if (used != ys.size()) throw std::invalid_argument(ys);
      data.inputs.push_back(x);
      data.labels.push_back(y);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": cannot parse row \"" + t + "\"");
    }
  }
  validate_dataset(data);
  return data;
}

Objective make_quadratic(double rho, Eigen::Index n) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument("quadratic: rho must lie in (0,1), got " +
                                std::to_string(rho));
  }
  if (n < 1) {
    throw std::invalid_argument("quadratic: dimension must be >= 1");
  }
  // Inverse of the correlation matrix S_ij = rho^|i-j|. For n = 1 the matrix
  // is the scalar 1 and so is its inverse; the tridiagonal pattern below is
  // the n >= 2 closed form.
  Eigen::MatrixXd prec = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) {
    prec(0, 0) = 1.0;
  } else {
    const double s = 1.0 / (1.0 - rho * rho);
    for (Eigen::Index i = 0; i < n; ++i) {
      prec(i, i) = (i == 0 || i == n - 1) ? s : (1.0 + rho * rho) * s;
      if (i + 1 < n) {
        prec(i, i + 1) = -rho * s;
        prec(i + 1, i) = -rho * s;
      }
    }
  }

  Objective obj;
  obj.name = "quadratic";
  obj.dim = n;
  obj.f = [prec](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(prec * x);
  };
  obj.grad = [prec](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return prec * x;
  };
  obj.hess = [prec](const Eigen::VectorXd&) { return prec; };
  obj.minima.push_back(
      {Eigen::VectorXd::Zero(n), MinimumKind::global, 0.0, false});
  return obj;
}

Objective make_rosenbrock(Eigen::Index n) {
  if (n < 2) {
    throw std::invalid_argument("rosenbrock: dimension must be >= 2");
  }
  Objective obj;
  obj.name = "rosenbrock";
  obj.dim = n;
  obj.f = [n](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double a = 1.0 - x[i];
      const double b = x[i + 1] - x[i] * x[i];
      s += a * a + 100.0 * b * b;
    }
    return s;
  };
  obj.grad = [n](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i + 1 < n) {
        g[i] += -2.0 * (1.0 - x[i]) - 400.0 * x[i] * (x[i + 1] - x[i] * x[i]);
      }
      if (i > 0) {
        g[i] += 200.0 * (x[i] - x[i - 1] * x[i - 1]);
      }
    }
    return g;
  };
  obj.hess = [n](const Eigen::VectorXd& x) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i + 1 < n) {
        h(i, i) += 2.0 - 400.0 * x[i + 1] + 1200.0 * x[i] * x[i];
        h(i, i + 1) = -400.0 * x[i];
        h(i + 1, i) = -400.0 * x[i];
      }
      if (i > 0) {
        h(i, i) += 200.0;
      }
    }
    return h;
  };
  obj.minima.push_back(
      {Eigen::VectorXd::Ones(n), MinimumKind::global, 0.0, false});
  if (n >= 4) {
    Eigen::VectorXd local = Eigen::VectorXd::Ones(n);
    local[0] = -1.0;
    obj.minima.push_back({local, MinimumKind::local, std::nullopt, true});
  }
  return obj;
}

Objective make_yatf() {
  Objective obj;
  obj.name = "yatf";
  obj.dim = 2;
  // f = sin(u) cos(v) with u = 2x^2 - y^2 + 3 and v = x + 1 - exp(2y).
  obj.f = [](const Eigen::VectorXd& w) {
    const double x = w[0], y = w[1];
    const double u = 2.0 * x * x - y * y + 3.0;
    const double v = x + 1.0 - std::exp(2.0 * y);
    return std::sin(u) * std::cos(v);
  };
  obj.grad = [](const Eigen::VectorXd& w) {
    const double x = w[0], y = w[1];
    const double u = 2.0 * x * x - y * y + 3.0;
    const double e2y = std::exp(2.0 * y);
    const double v = x + 1.0 - e2y;
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    Eigen::VectorXd g(2);
    g[0] = 4.0 * x * cu * cv - su * sv;
    g[1] = -2.0 * y * cu * cv + 2.0 * e2y * su * sv;
    return g;
  };
  obj.hess = [](const Eigen::VectorXd& w) {
    const double x = w[0], y = w[1];
    const double u = 2.0 * x * x - y * y + 3.0;
    const double e2y = std::exp(2.0 * y);
    const double v = x + 1.0 - e2y;
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    Eigen::MatrixXd h(2, 2);
    h(0, 0) = 4.0 * cu * cv - 16.0 * x * x * su * cv - 8.0 * x * cu * sv -
              su * cv;
    h(0, 1) = 8.0 * x * y * su * cv + 8.0 * x * e2y * cu * sv +
              2.0 * y * cu * sv + 2.0 * e2y * su * cv;
    h(1, 0) = h(0, 1);
    h(1, 1) = -2.0 * cu * cv - 4.0 * y * y * su * cv -
              8.0 * y * e2y * cu * sv + 4.0 * e2y * su * sv -
              4.0 * e2y * e2y * su * cv;
    return h;
  };
  // Both basins are only known approximately; neither carries a value.
  obj.minima.push_back(
      {Eigen::Vector2d(-0.12, 0.18), MinimumKind::local, std::nullopt, true});
  obj.minima.push_back(
      {Eigen::Vector2d(0.32, 1.60), MinimumKind::local, std::nullopt, true});
  return obj;
}

Objective make_logreg(const Dataset& data) {
  validate_dataset(data);
  Objective obj;
  obj.name = "logreg";
  obj.dim = 2;
  const Dataset d = data;  // immutable copy shared by the closures
  const double n = static_cast<double>(d.inputs.size());
  obj.f = [d, n](const Eigen::VectorXd& th) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.inputs.size(); ++i) {
      const double r = logistic(th[0] * d.inputs[i] + th[1]) - d.labels[i];
      s += r * r;
    }
    return s / n;
  };
  obj.grad = [d, n](const Eigen::VectorXd& th) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
    for (std::size_t i = 0; i < d.inputs.size(); ++i) {
      const double sig = logistic(th[0] * d.inputs[i] + th[1]);
      const double w = (sig - d.labels[i]) * sig * (1.0 - sig);
      g[0] += w * d.inputs[i];
      g[1] += w;
    }
    return Eigen::VectorXd(2.0 / n * g);
  };
  obj.hess = [d, n](const Eigen::VectorXd& th) {
    // d/ds [sig (1-sig)] = sig (1-sig) (1-2 sig) with s the linear score.
    double haa = 0.0, hab = 0.0, hbb = 0.0;
    for (std::size_t i = 0; i < d.inputs.size(); ++i) {
      const double x = d.inputs[i];
      const double sig = logistic(th[0] * x + th[1]);
      const double g = sig * (1.0 - sig);
      const double gp = g * (1.0 - 2.0 * sig);
      const double c = g * g + (sig - d.labels[i]) * gp;
      haa += x * x * c;
      hab += x * c;
      hbb += c;
    }
    Eigen::MatrixXd h(2, 2);
    h(0, 0) = 2.0 / n * haa;
    h(0, 1) = 2.0 / n * hab;
    h(1, 0) = h(0, 1);
    h(1, 1) = 2.0 / n * hbb;
    return h;
  };
  return obj;
}

double check_gradient(const Objective& obj, const Eigen::VectorXd& x,
                      double step) {
  require_dim(obj, x, "check_gradient");
  if (!(step > 0.0)) {
    throw std::invalid_argument("check_gradient: step must be positive");
  }
  const Eigen::VectorXd g = obj.grad(x);
  double worst = 0.0;
  Eigen::VectorXd xp = x, xm = x;
  for (Eigen::Index i = 0; i < obj.dim; ++i) {
    xp[i] = x[i] + step;
    xm[i] = x[i] - step;
    const double fd = (obj.f(xp) - obj.f(xm)) / (2.0 * step);
    xp[i] = x[i];
    xm[i] = x[i];
    const double err = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace momint
