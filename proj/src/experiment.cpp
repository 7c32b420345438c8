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

#include "momint/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <stdexcept>
#include <string>

#include "momint/wwj.hpp"

namespace momint {

namespace {

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out.empty() ? "method" : out;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MethodResult run_one(const Objective& obj, const MethodConfig& mc,
                     const std::string& label, double h,
                     const Eigen::VectorXd& x0, const StopRule& stop) {
  MethodResult res;
  res.label = label;
  res.method = mc;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (mc.name == "wwj") {
      WwjParams params;
      params.p = mc.p;
      params.D = mc.D;
      params.N = mc.N;
      params.h = h;
      res.trajectory = wwj_run(obj, params, x0, stop);
    } else {
      Method m = Method::gd;
      if (mc.name == "cm") m = Method::cm;
      if (mc.name == "nag") m = Method::nag;
      res.trajectory = run(obj, m, make_schedule(mc, h), x0, stop);
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  return res;
}

}  // namespace

Objective make_objective(const ObjectiveConfig& oc) {
  if (oc.name == "quadratic") return make_quadratic(oc.rho, oc.n);
  if (oc.name == "rosenbrock") return make_rosenbrock(oc.n);
  if (oc.name == "yatf") return make_yatf();
  if (oc.name == "logreg") {
    return make_logreg(oc.dataset == "preset" ? make_default_dataset()
                                              : load_dataset_csv(oc.dataset));
  }
  throw std::invalid_argument("make_objective: unknown objective '" + oc.name +
                              "'");
}

SchemeCoefficients make_schedule(const MethodConfig& mc, double h) {
  if (mc.name == "wwj") {
    throw std::invalid_argument(
        "make_schedule: method wwj does not use a coefficient schedule");
  }
  if (mc.schedule == "classical") {
    return classical_schedule(mc.n, h, mc.asymptotic);
  }
  if (mc.schedule == "wwj") return wwj_schedule(mc.n, mc.D, h, mc.asymptotic);
  if (mc.schedule == "bjw") return bjw_schedule(mc.n, mc.D, h, mc.asymptotic);
  if (mc.schedule == "constant") return constant_schedule(mc.lambda, h);
  throw std::invalid_argument("make_schedule: unknown schedule '" +
                              mc.schedule + "'");
}

Eigen::VectorXd preset_x0(const Objective& obj) {
  if (obj.name == "quadratic") return Eigen::VectorXd::Ones(obj.dim);
  if (obj.name == "rosenbrock") return Eigen::VectorXd::Zero(obj.dim);
  if (obj.name == "yatf") {
    Eigen::VectorXd x(2);
    x << -1.0, 0.5;
    return x;
  }
  if (obj.name == "logreg") return Eigen::VectorXd::Zero(2);
  throw std::invalid_argument("preset_x0: no preset for objective '" +
                              obj.name + "'");
}

std::string method_label(const MethodConfig& mc) {
  if (mc.name == "wwj") return "wwj-p" + std::to_string(mc.p);
  std::string label = mc.name + "-" + mc.schedule;
  if (mc.schedule == "classical" || mc.schedule == "wwj" ||
      mc.schedule == "bjw") {
    label += "-n" + std::to_string(mc.n);
  }
  if (mc.asymptotic) label += "-asym";
  return label;
}

RunRecord run_experiment(const ExperimentConfig& cfg, bool parallel) {
  RunRecord rec;
  rec.config = cfg;
  const Objective obj = make_objective(cfg.objective);
  Eigen::VectorXd x0;
  if (cfg.x0.empty()) {
    x0 = preset_x0(obj);
  } else {
    x0 = Eigen::Map<const Eigen::VectorXd>(cfg.x0.data(), cfg.x0.size());
  }
  StopRule stop;
  stop.max_iters = cfg.iterations;

  // Resolve labels up front (user label wins; duplicates get -2, -3, ...).
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const auto& mc : cfg.methods) {
    std::string base = mc.label.empty() ? method_label(mc) : mc.label;
    const int count = ++seen[base];
    labels.push_back(count == 1 ? base : base + "-" + std::to_string(count));
  }

  if (parallel && cfg.methods.size() > 1) {
    std::vector<std::future<MethodResult>> futures;
    futures.reserve(cfg.methods.size());
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
      futures.push_back(std::async(std::launch::async, run_one, std::cref(obj),
                                   std::cref(cfg.methods[i]),
                                   labels[i], cfg.h, std::cref(x0),
                                   std::cref(stop)));
    }
    for (auto& fut : futures) rec.results.push_back(fut.get());
  } else {
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
      rec.results.push_back(
          run_one(obj, cfg.methods[i], labels[i], cfg.h, x0, stop));
    }
  }
  return rec;
}

bool record_ok(const RunRecord& rec) {
  for (const auto& r : rec.results) {
    if (!r.error.empty() || r.trajectory.diverged) return false;
  }
  return true;
}

std::vector<std::string> write_csv(const RunRecord& rec,
                                   const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("write_csv: cannot create directory " + dir +
                             ": " + ec.message());
  }
  std::vector<std::string> written;
  const long stride = rec.config.record_stride;
  for (const auto& res : rec.results) {
    const std::string path = dir + "/" + sanitize(res.label) + ".csv";
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("write_csv: cannot open " + path);
    }
    const auto& records = res.trajectory.records;
    const bool coords =
        !records.empty() && records.front().x.size() <= 3;
    out << "k,f,gradnorm";
    if (coords) {
      for (Eigen::Index j = 0; j < records.front().x.size(); ++j) {
        out << ",x" << j + 1;
      }
    }
    out << "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const bool keep =
          records[i].k % stride == 0 || i + 1 == records.size();
      if (!keep) continue;
      out << records[i].k << "," << num(records[i].fval) << ","
          << num(records[i].gradnorm);
      if (coords) {
        for (Eigen::Index j = 0; j < records[i].x.size(); ++j) {
          out << "," << num(records[i].x[j]);
        }
      }
      out << "\n";
    }
    if (!out) {
      throw std::runtime_error("write_csv: write failed for " + path);
    }
    written.push_back(path);
  }
  const std::string manifest = dir + "/manifest.txt";
  std::ofstream mf(manifest);
  if (!mf) {
    throw std::runtime_error("write_csv: cannot open " + manifest);
  }
  mf << "# experiment manifest\n" << serialize_config(rec.config) << "\n";
  for (const auto& res : rec.results) {
    mf << res.label << ": ";
    if (!res.error.empty()) {
      mf << "error (" << res.error << ")";
    } else {
      const auto& t = res.trajectory;
      mf << (t.diverged ? "diverged" : "ok") << " stop=" << t.stop_reason
         << " steps=" << (t.records.empty() ? 0L : t.records.back().k)
         << " f_final=" << (t.records.empty() ? 0.0 : t.records.back().fval);
    }
    char sec[32];
    std::snprintf(sec, sizeof sec, " seconds=%.3f", res.seconds);
    mf << sec << "\n";
  }
  if (!mf) {
    throw std::runtime_error("write_csv: write failed for " + manifest);
  }
  written.push_back(manifest);
  return written;
}

long count_oscillations(const std::vector<double>& f, long skip) {
  if (skip < 0) skip = 0;
  long count = 0;
  for (std::size_t i = skip + 1; i + 1 < f.size(); ++i) {
    if (f[i] > f[i - 1] && f[i] > f[i + 1]) ++count;
  }
  return count;
}

std::vector<std::string> objective_names() {
  return {"quadratic", "rosenbrock", "yatf", "logreg"};
}

std::vector<std::string> schedule_names() {
  return {"classical", "wwj", "bjw", "constant"};
}

}  // namespace momint
