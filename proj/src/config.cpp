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

#include "momint/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace momint {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;  // duplicates rejected at insert
};

// Collects errors; the config is only returned when the list stays empty.
struct ErrorSink {
  std::vector<ParseError>* errors;
  void add(int line, const std::string& msg) { errors->push_back({line, msg}); }
};

bool parse_double_token(const std::string& s, double* out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

bool parse_long_token(const std::string& s, long* out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

bool parse_bool_token(const std::string& s, bool* out) {
  const std::string t = trim(s);
  if (t == "true") {
    *out = true;
    return true;
  }
  if (t == "false") {
    *out = false;
    return true;
  }
  return false;
}

bool parse_array_token(const std::string& s, std::vector<double>* out) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') return false;
  out->clear();
  const std::string inner = trim(t.substr(1, t.size() - 2));
  if (inner.empty()) return true;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_double_token(item, &v)) return false;
    out->push_back(v);
  }
  return !inner.empty() && inner.back() != ',';
}

// Shortest decimal representation that parses back to exactly v.
std::string repr_double(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

const std::set<std::string> kObjectiveNames = {"quadratic", "rosenbrock",
                                               "yatf", "logreg"};
const std::set<std::string> kMethodNames = {"gd", "cm", "nag", "wwj"};
const std::set<std::string> kScheduleNames = {"classical", "wwj", "bjw",
                                              "constant"};

// Keys the named objective consumes ("name" is always allowed).
std::set<std::string> objective_keys(const std::string& name) {
  if (name == "quadratic") return {"name", "rho", "n"};
  if (name == "rosenbrock") return {"name", "n"};
  if (name == "yatf") return {"name"};
  return {"name", "dataset"};  // logreg
}

// Keys the method entry consumes given its name and declared schedule.
std::set<std::string> method_keys(const std::string& name,
                                  const std::string& schedule) {
  std::set<std::string> keys = {"name", "label"};
  if (name == "wwj") {
    keys.insert({"p", "D", "N"});
    return keys;
  }
  keys.insert("schedule");
  if (schedule == "classical") keys.insert({"n", "asymptotic"});
  if (schedule == "wwj" || schedule == "bjw") keys.insert({"n", "D",
                                                           "asymptotic"});
  if (schedule == "constant") keys.insert("lambda");
  return keys;
}

// Typed fetches: each returns true when the key is present AND well-formed,
// reporting a line-anchored error otherwise.
bool get_double(const Section& sec, const std::string& key, ErrorSink err,
                double* out) {
  auto it = sec.entries.find(key);
  if (it == sec.entries.end()) return false;
  if (!parse_double_token(it->second.value, out)) {
    err.add(it->second.line, "key '" + key + "' expects a number, got '" +
                                 it->second.value + "'");
    return false;
  }
  return true;
}

bool get_long(const Section& sec, const std::string& key, ErrorSink err,
              long* out) {
  auto it = sec.entries.find(key);
  if (it == sec.entries.end()) return false;
  if (!parse_long_token(it->second.value, out)) {
    err.add(it->second.line, "key '" + key + "' expects an integer, got '" +
                                 it->second.value + "'");
    return false;
  }
  return true;
}

bool get_bool(const Section& sec, const std::string& key, ErrorSink err,
              bool* out) {
  auto it = sec.entries.find(key);
  if (it == sec.entries.end()) return false;
  if (!parse_bool_token(it->second.value, out)) {
    err.add(it->second.line, "key '" + key + "' expects true or false, got '" +
                                 it->second.value + "'");
    return false;
  }
  return true;
}

bool get_string(const Section& sec, const std::string& key, std::string* out) {
  auto it = sec.entries.find(key);
  if (it == sec.entries.end()) return false;
  *out = it->second.value;
  return true;
}

int key_line(const Section& sec, const std::string& key) {
  auto it = sec.entries.find(key);
  return it == sec.entries.end() ? sec.line : it->second.line;
}

void reject_unknown(const Section& sec, const std::set<std::string>& allowed,
                    const std::string& what, ErrorSink err) {
  for (const auto& [key, entry] : sec.entries) {
    if (allowed.count(key) == 0) {
      err.add(entry.line,
              "key '" + key + "' is not a parameter of " + what);
    }
  }
}

void read_experiment(const Section& sec, ExperimentConfig* cfg,
                     ErrorSink err) {
  reject_unknown(sec,
                 {"h", "iterations", "x0", "output_dir", "record_stride",
                  "plot"},
                 "[experiment]", err);
  if (get_double(sec, "h", err, &cfg->h) && !(cfg->h > 0.0)) {
    err.add(key_line(sec, "h"), "h must be positive");
  }
  if (get_long(sec, "iterations", err, &cfg->iterations) &&
      cfg->iterations < 1) {
    err.add(key_line(sec, "iterations"), "iterations must be >= 1");
  }
  if (auto it = sec.entries.find("x0"); it != sec.entries.end()) {
    if (!parse_array_token(it->second.value, &cfg->x0)) {
      err.add(it->second.line,
              "key 'x0' expects an array like [1.0, -0.5], got '" +
                  it->second.value + "'");
    }
  }
  get_string(sec, "output_dir", &cfg->output_dir);
  if (get_long(sec, "record_stride", err, &cfg->record_stride) &&
      cfg->record_stride < 1) {
    err.add(key_line(sec, "record_stride"), "record_stride must be >= 1");
  }
  if (get_string(sec, "plot", &cfg->plot) && cfg->plot != "none" &&
      cfg->plot != "svg") {
    err.add(key_line(sec, "plot"), "plot must be 'none' or 'svg'");
  }
}

void read_objective(const Section& sec, ObjectiveConfig* obj, ErrorSink err) {
  if (!get_string(sec, "name", &obj->name)) {
    err.add(sec.line, "[objective] needs a 'name' key");
    return;
  }
  if (kObjectiveNames.count(obj->name) == 0) {
    err.add(key_line(sec, "name"),
            "unknown objective '" + obj->name +
                "' (expected quadratic, rosenbrock, yatf or logreg)");
    return;
  }
  reject_unknown(sec, objective_keys(obj->name), "objective " + obj->name,
                 err);
  if (get_double(sec, "rho", err, &obj->rho) &&
      !(obj->rho > 0.0 && obj->rho < 1.0)) {
    err.add(key_line(sec, "rho"), "rho must lie in (0, 1)");
  }
  if (get_long(sec, "n", err, &obj->n)) {
    const long lo = obj->name == "rosenbrock" ? 2 : 1;
    if (obj->n < lo) {
      err.add(key_line(sec, "n"),
              "n must be >= " + std::to_string(lo) + " for " + obj->name);
    }
  }
  get_string(sec, "dataset", &obj->dataset);
}

void read_method(const Section& sec, MethodConfig* m, ErrorSink err) {
  if (!get_string(sec, "name", &m->name)) {
    err.add(sec.line, "[method] needs a 'name' key");
    return;
  }
  if (kMethodNames.count(m->name) == 0) {
    err.add(key_line(sec, "name"), "unknown method '" + m->name +
                                       "' (expected gd, cm, nag or wwj)");
    return;
  }
  get_string(sec, "label", &m->label);
  if (m->name == "wwj") {
    reject_unknown(sec, method_keys(m->name, ""), "method wwj", err);
    long p = m->p;
    if (get_long(sec, "p", err, &p)) {
      if (p != 2 && p != 3) {
        err.add(key_line(sec, "p"), "p must be 2 or 3");
      }
      m->p = static_cast<int>(p);
    }
    if (get_double(sec, "D", err, &m->D) && !(m->D > 0.0)) {
      err.add(key_line(sec, "D"), "D must be positive");
    }
    if (get_double(sec, "N", err, &m->N) && !(m->N > 0.0)) {
      err.add(key_line(sec, "N"), "N must be positive");
    }
    return;
  }
  if (!get_string(sec, "schedule", &m->schedule)) {
    err.add(sec.line, "method " + m->name + " needs a 'schedule' key");
    return;
  }
  if (kScheduleNames.count(m->schedule) == 0) {
    err.add(key_line(sec, "schedule"),
            "unknown schedule '" + m->schedule +
                "' (expected classical, wwj, bjw or constant)");
    return;
  }
  reject_unknown(sec, method_keys(m->name, m->schedule),
                 "method " + m->name + " with schedule " + m->schedule, err);
  get_bool(sec, "asymptotic", err, &m->asymptotic);
  if (get_long(sec, "n", err, &m->n)) {
    const long lo = m->schedule == "classical" ? 2 : 3;
    if (m->n < lo) {
      err.add(key_line(sec, "n"), "n must be >= " + std::to_string(lo) +
                                      " for the " + m->schedule + " schedule");
    }
  }
  if (get_double(sec, "D", err, &m->D) && !(m->D > 0.0)) {
    err.add(key_line(sec, "D"), "D must be positive");
  }
  if (get_double(sec, "lambda", err, &m->lambda) && !(m->lambda > 0.0)) {
    err.add(key_line(sec, "lambda"), "lambda must be positive");
  }
}

long objective_dim(const ObjectiveConfig& obj) {
  if (obj.name == "quadratic" || obj.name == "rosenbrock") return obj.n;
  return 2;  // yatf, logreg
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  ErrorSink err{&result.errors};

  // Pass 1: split into sections of key = value entries.
  std::vector<Section> sections;
  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        err.add(lineno, "malformed section header '" + line + "'");
        continue;
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name != "experiment" && name != "objective" && name != "method") {
        err.add(lineno, "unknown section [" + name + "]");
      }
      sections.push_back({name, lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err.add(lineno, "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      err.add(lineno, "empty key before '='");
      continue;
    }
    if (sections.empty() || (sections.back().name != "experiment" &&
                             sections.back().name != "objective" &&
                             sections.back().name != "method")) {
      if (sections.empty()) {
        err.add(lineno, "key '" + key + "' appears before any section header");
      }
      continue;  // keys of an unknown section: already reported once
    }
    auto [it, inserted] = sections.back().entries.insert({key, {value, lineno}});
    if (!inserted) {
      err.add(lineno, "duplicate key '" + key + "' in [" +
                          sections.back().name + "] (first on line " +
                          std::to_string(it->second.line) + ")");
    }
  }

  // Pass 2: interpret sections.
  ExperimentConfig cfg;
  const Section* experiment = nullptr;
  const Section* objective = nullptr;
  for (const auto& sec : sections) {
    if (sec.name == "experiment") {
      if (experiment != nullptr) {
        err.add(sec.line, "duplicate [experiment] section");
        continue;
      }
      experiment = &sec;
    } else if (sec.name == "objective") {
      if (objective != nullptr) {
        err.add(sec.line, "duplicate [objective] section");
        continue;
      }
      objective = &sec;
    }
  }
  if (experiment != nullptr) read_experiment(*experiment, &cfg, err);
  if (objective == nullptr) {
    err.add(0, "missing [objective] section");
  } else {
    read_objective(*objective, &cfg.objective, err);
  }
  for (const auto& sec : sections) {
    if (sec.name != "method") continue;
    MethodConfig m;
    read_method(sec, &m, err);
    cfg.methods.push_back(m);
  }
  if (cfg.methods.empty()) {
    err.add(0, "no [method] sections (need at least one)");
  }

  // Cross-section check: explicit x0 must match the objective dimension.
  if (result.errors.empty() && !cfg.x0.empty() &&
      static_cast<long>(cfg.x0.size()) != objective_dim(cfg.objective)) {
    const int line =
        experiment != nullptr ? key_line(*experiment, "x0") : 0;
    err.add(line, "x0 has " + std::to_string(cfg.x0.size()) +
                      " entries but objective " + cfg.objective.name +
                      " has dimension " +
                      std::to_string(objective_dim(cfg.objective)));
  }

  if (result.errors.empty()) result.config = cfg;
  return result;
}

ParseResult load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return {std::nullopt, {{0, "cannot open config file: " + path}}};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  out += "[experiment]\n";
  out += "h = " + repr_double(cfg.h) + "\n";
  out += "iterations = " + std::to_string(cfg.iterations) + "\n";
  if (!cfg.x0.empty()) {
    out += "x0 = [";
    for (std::size_t i = 0; i < cfg.x0.size(); ++i) {
      if (i > 0) out += ", ";
      out += repr_double(cfg.x0[i]);
    }
    out += "]\n";
  }
  out += "output_dir = " + cfg.output_dir + "\n";
  out += "record_stride = " + std::to_string(cfg.record_stride) + "\n";
  out += "plot = " + cfg.plot + "\n";

  out += "\n[objective]\n";
  out += "name = " + cfg.objective.name + "\n";
  if (cfg.objective.name == "quadratic") {
    out += "rho = " + repr_double(cfg.objective.rho) + "\n";
  }
  if (cfg.objective.name == "quadratic" ||
      cfg.objective.name == "rosenbrock") {
    out += "n = " + std::to_string(cfg.objective.n) + "\n";
  }
  if (cfg.objective.name == "logreg") {
    out += "dataset = " + cfg.objective.dataset + "\n";
  }

  for (const auto& m : cfg.methods) {
    out += "\n[method]\n";
    out += "name = " + m.name + "\n";
    if (m.name == "wwj") {
      out += "p = " + std::to_string(m.p) + "\n";
      out += "D = " + repr_double(m.D) + "\n";
      out += "N = " + repr_double(m.N) + "\n";
    } else {
      out += "schedule = " + m.schedule + "\n";
      if (m.schedule == "classical" || m.schedule == "wwj" ||
          m.schedule == "bjw") {
        out += "n = " + std::to_string(m.n) + "\n";
        out += std::string("asymptotic = ") +
               (m.asymptotic ? "true" : "false") + "\n";
      }
      if (m.schedule == "wwj" || m.schedule == "bjw") {
        out += "D = " + repr_double(m.D) + "\n";
      }
      if (m.schedule == "constant") {
        out += "lambda = " + repr_double(m.lambda) + "\n";
      }
    }
    if (!m.label.empty()) out += "label = " + m.label + "\n";
  }
  return out;
}

}  // namespace momint
