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

#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "momint/config.hpp"
#include "momint/experiment.hpp"
#include "momint/geometry.hpp"
#include "momint/plot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;  // divergence, method error, failed check
constexpr int kExitUsage = 2;       // bad invocation or config

struct RunOptions {
  std::string config_path;
  bool serial = false;
};

struct GradientCheckOptions {
  std::string objective = "quadratic";
  long n = 2;
  double rho = 0.9;
  long points = 100;
  double step = 1e-6;
  double tol = 1e-5;
  unsigned seed = 20260822;
};

struct SymplecticityCheckOptions {
  std::string objective = "quadratic";
  long obj_n = 2;
  double rho = 0.9;
  std::string schedule = "classical";
  long n = 3;
  double D = 1.0;
  double lambda = 1.0;
  double h = 0.1;
  long points = 50;
  double fd_step = 1e-5;
  double tol = 1e-5;
  bool forced = false;
  unsigned seed = 20260822;
};

momint::ExperimentConfig load_or_die(const std::string& path, int* rc) {
  momint::ParseResult parsed = momint::load_config_file(path);
  if (!parsed.config.has_value()) {
    std::fprintf(stderr, "error: config '%s' is invalid:\n", path.c_str());
    for (const auto& e : parsed.errors) {
      if (e.line > 0) {
        std::fprintf(stderr, "  line %d: %s\n", e.line, e.message.c_str());
      } else {
        std::fprintf(stderr, "  %s\n", e.message.c_str());
      }
    }
    *rc = kExitUsage;
    return {};
  }
  *rc = kExitOk;
  return *parsed.config;
}

void print_summary(const momint::RunRecord& rec) {
  std::printf("%-28s %-10s %-12s %8s %13s %13s %9s\n", "method", "status",
              "stop", "steps", "f_final", "gradnorm", "seconds");
  for (const auto& res : rec.results) {
    const auto& t = res.trajectory;
    const char* status = !res.error.empty() ? "error"
                         : t.diverged       ? "diverged"
                                            : "ok";
    const long steps = t.records.empty() ? 0 : t.records.back().k;
    const double f = t.records.empty() ? 0.0 : t.records.back().fval;
    const double g = t.records.empty() ? 0.0 : t.records.back().gradnorm;
    std::printf("%-28s %-10s %-12s %8ld %13.5e %13.5e %9.3f\n",
                res.label.c_str(), status,
                res.error.empty() ? t.stop_reason.c_str() : "-", steps, f, g,
                res.seconds);
    if (!res.error.empty()) {
      std::printf("  error: %s\n", res.error.c_str());
    }
  }
}

int cmd_run(const RunOptions& opt, bool write_outputs) {
  int rc = kExitOk;
  momint::ExperimentConfig cfg = load_or_die(opt.config_path, &rc);
  if (rc != kExitOk) return rc;
  if (const char* env = std::getenv("MOMINT_OUTPUT_DIR");
      env != nullptr && *env != '\0') {
    cfg.output_dir = env;
  }
  momint::RunRecord rec;
  try {
    rec = momint::run_experiment(cfg, !opt.serial);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRunFailure;
  }
  print_summary(rec);

  if (write_outputs) {
    try {
      for (const auto& path : momint::write_csv(rec, cfg.output_dir)) {
        std::printf("wrote %s\n", path.c_str());
      }
      if (cfg.plot == "svg") {
        std::printf("wrote %s\n",
                    momint::render_plot(rec, momint::PlotKind::fvals_loglog,
                                        cfg.output_dir + "/fvals.svg")
                        .c_str());
        const momint::Objective obj = momint::make_objective(cfg.objective);
        if (obj.dim == 2) {
          std::printf("wrote %s\n",
                      momint::render_plot(rec,
                                          momint::PlotKind::trajectory_2d,
                                          cfg.output_dir + "/trajectory.svg")
                          .c_str());
        }
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitRunFailure;
    }
  } else {
    // comparison extras: oscillation counts of the recorded f-sequences
    std::printf("\n%-28s %14s\n", "method", "oscillations");
    for (const auto& res : rec.results) {
      if (!res.error.empty()) continue;
      std::vector<double> f;
      f.reserve(res.trajectory.records.size());
      for (const auto& r : res.trajectory.records) f.push_back(r.fval);
      std::printf("%-28s %14ld\n", res.label.c_str(),
                  momint::count_oscillations(f));
    }
  }

  if (!momint::record_ok(rec)) {
    std::fprintf(stderr, "error: at least one method diverged or failed\n");
    return kExitRunFailure;
  }
  return kExitOk;
}

int cmd_check_gradient(const GradientCheckOptions& opt) {
  momint::ObjectiveConfig oc;
  oc.name = opt.objective;
  oc.n = opt.n;
  oc.rho = opt.rho;
  momint::Objective obj;
  try {
    obj = momint::make_objective(oc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  double worst = 0.0;
  for (long i = 0; i < opt.points; ++i) {
    Eigen::VectorXd x(obj.dim);
    for (Eigen::Index j = 0; j < obj.dim; ++j) x[j] = box(rng);
    worst = std::max(worst, momint::check_gradient(obj, x, opt.step));
  }
  std::printf(
      "gradient check: objective=%s dim=%ld points=%ld step=%g "
      "max_error=%.3e tol=%.0e -> %s\n",
      obj.name.c_str(), static_cast<long>(obj.dim), opt.points, opt.step,
      worst, opt.tol, worst <= opt.tol ? "pass" : "FAIL");
  return worst <= opt.tol ? kExitOk : kExitRunFailure;
}

int cmd_check_symplecticity(const SymplecticityCheckOptions& opt) {
  momint::ObjectiveConfig oc;
  oc.name = opt.objective;
  oc.n = opt.obj_n;
  oc.rho = opt.rho;
  momint::MethodConfig mc;
  mc.name = "cm";
  mc.schedule = opt.schedule;
  mc.n = opt.n;
  mc.D = opt.D;
  mc.lambda = opt.lambda;
  momint::Objective obj;
  momint::SchemeCoefficients sched;
  try {
    obj = momint::make_objective(oc);
    sched = momint::make_schedule(mc, opt.h);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  const long k_hi = 8;
  const momint::DiscreteLagrangianCoefficients coeffs =
      momint::lagrangian_from_scheme(sched, k_hi + 2);
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  const long k_lo = std::max<long>(1, sched.first_step);
  std::uniform_int_distribution<long> kdist(k_lo, k_hi);
  double worst = 0.0;
  for (long i = 0; i < opt.points; ++i) {
    momint::PhasePoint pt;
    pt.x.resize(obj.dim);
    pt.p.resize(obj.dim);
    for (Eigen::Index j = 0; j < obj.dim; ++j) {
      pt.x[j] = box(rng);
      pt.p[j] = box(rng);
    }
    const auto rep = momint::symplecticity_defect(coeffs, obj, pt, kdist(rng),
                                                  opt.fd_step, opt.forced);
    worst = std::max(worst, rep.defect);
  }
  if (opt.forced) {
    std::printf(
        "symplecticity (forced map, negative control): objective=%s "
        "schedule=%s points=%ld max_defect=%.3e (expected to be large)\n",
        obj.name.c_str(), opt.schedule.c_str(), opt.points, worst);
    return kExitOk;
  }
  std::printf(
      "symplecticity check: objective=%s schedule=%s points=%ld "
      "max_defect=%.3e tol=%.0e -> %s\n",
      obj.name.c_str(), opt.schedule.c_str(), opt.points, worst, opt.tol,
      worst <= opt.tol ? "pass" : "FAIL");
  return worst <= opt.tol ? kExitOk : kExitRunFailure;
}

int cmd_list(const std::string& what) {
  const bool all = what.empty();
  if (all || what == "objectives") {
    std::printf("objectives:\n");
    for (const auto& n : momint::objective_names()) {
      std::printf("  %s\n", n.c_str());
    }
  }
  if (all || what == "methods") {
    std::printf("methods:\n  gd\n  cm\n  nag\n  wwj\n");
  }
  if (all || what == "schedules") {
    std::printf("schedules:\n");
    for (const auto& n : momint::schedule_names()) {
      std::printf("  %s\n", n.c_str());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "momint: momentum descent as variational integrators.\n"
      "Runs gd/cm/nag/wwj on built-in objectives and checks the geometric\n"
      "structure (gradients, symplecticity) behind them."};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand(
      "run", "run every method of a config and write CSV/SVG outputs");
  run_cmd->add_option("config", run_opt.config_path, "experiment config file")
      ->required();
  run_cmd->add_flag("--serial", run_opt.serial,
                    "run methods one after another instead of concurrently");

  RunOptions cmp_opt;
  auto* cmp_cmd = app.add_subcommand(
      "compare", "run every method of a config and print a comparison "
                 "table (no files are written)");
  cmp_cmd->add_option("config", cmp_opt.config_path, "experiment config file")
      ->required();
  cmp_cmd->add_flag("--serial", cmp_opt.serial,
                    "run methods one after another instead of concurrently");

  auto* check_cmd =
      app.add_subcommand("check", "numerical self-checks (exit 1 on failure)");
  check_cmd->require_subcommand(1);

  GradientCheckOptions g_opt;
  auto* g_cmd = check_cmd->add_subcommand(
      "gradient", "compare analytic gradients with finite differences at "
                  "random points");
  g_cmd->add_option("--objective", g_opt.objective,
                    "quadratic | rosenbrock | yatf | logreg");
  g_cmd->add_option("--n", g_opt.n, "objective dimension (quadratic, "
                                    "rosenbrock)");
  g_cmd->add_option("--rho", g_opt.rho, "quadratic correlation in (0,1)");
  g_cmd->add_option("--points", g_opt.points, "number of sample points");
  g_cmd->add_option("--step", g_opt.step, "finite-difference step");
  g_cmd->add_option("--tol", g_opt.tol, "pass tolerance on the max error");
  g_cmd->add_option("--seed", g_opt.seed, "RNG seed");

  SymplecticityCheckOptions s_opt;
  auto* s_cmd = check_cmd->add_subcommand(
      "symplecticity", "finite-difference check that the unforced one-step "
                       "map preserves the canonical pairing");
  s_cmd->set_help_flag("--help", "print help");  // frees -h for --h below
  s_cmd->add_option("--objective", s_opt.objective,
                    "quadratic | rosenbrock | yatf | logreg");
  s_cmd->add_option("--obj-n", s_opt.obj_n, "objective dimension");
  s_cmd->add_option("--rho", s_opt.rho, "quadratic correlation in (0,1)");
  s_cmd->add_option("--schedule", s_opt.schedule,
                    "classical | wwj | bjw | constant");
  s_cmd->add_option("--n", s_opt.n, "schedule exponent");
  s_cmd->add_option("--D", s_opt.D, "schedule scale (wwj, bjw)");
  s_cmd->add_option("--lambda", s_opt.lambda, "constant-schedule rate");
  s_cmd->add_option("--h", s_opt.h, "step size");
  s_cmd->add_option("--points", s_opt.points, "number of phase points");
  s_cmd->add_option("--fd-step", s_opt.fd_step, "finite-difference step");
  s_cmd->add_option("--tol", s_opt.tol, "pass tolerance on the max defect");
  s_cmd->add_flag("--forced", s_opt.forced,
                  "use the forced map (negative control; informational)");
  s_cmd->add_option("--seed", s_opt.seed, "RNG seed");

  std::string list_what;
  auto* list_cmd =
      app.add_subcommand("list", "list known objectives/methods/schedules");
  list_cmd->add_option("what", list_what,
                       "objectives | methods | schedules (default: all)")
      ->check(CLI::IsMember({"objectives", "methods", "schedules"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opt, true);
    if (cmp_cmd->parsed()) return cmd_run(cmp_opt, false);
    if (check_cmd->parsed()) {
      if (g_cmd->parsed()) return cmd_check_gradient(g_opt);
      return cmd_check_symplecticity(s_opt);
    }
    return cmd_list(list_what);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRunFailure;
  }
}
