// Copyright 2026 The Isene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isene/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

using nlohmann::json;

ConfigError::ConfigError(std::vector<SchemaIssue> issues)
    : Error([&] {
        std::ostringstream msg;
        msg << "invalid config (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
        for (const SchemaIssue& i : issues) msg << "\n  " << (i.pointer.empty() ? "/" : i.pointer) << ": " << i.message;
        return msg.str();
      }()),
      issues_(std::move(issues)) {}

namespace {

const std::vector<std::pair<Task, std::string>>& task_table() {
  static const std::vector<std::pair<Task, std::string>> t = {
      {Task::kSolve, "solve"},       {Task::kExtract, "extract"},   {Task::kScan, "scan"},
      {Task::kSpectrum, "spectrum"}, {Task::kDynamics, "dynamics"}, {Task::kOptimize, "optimize"},
      {Task::kGates, "gates"},       {Task::kQec, "qec"},           {Task::kCheck, "check"},
  };
  return t;
}

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Walks one JSON object, records every problem and remembers which keys were
// consumed so that leftovers can be reported as unknown.
class Reader {
 public:
  Reader(std::vector<SchemaIssue>& issues, const json* node, std::string pointer)
      : issues_(issues), node_(node), pointer_(std::move(pointer)) {
    if (node_ && !node_->is_object()) {
      fail("", "expected an object");
      node_ = nullptr;
    }
  }

  bool present() const { return node_ != nullptr; }
  bool has(const std::string& key) const { return node_ && node_->contains(key); }
  std::string at(const std::string& key) const { return pointer_ + "/" + escape_token(key); }

  void fail(const std::string& key, const std::string& message) {
    issues_.push_back({key.empty() ? pointer_ : at(key), message});
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    if (!node_) return nullptr;
    auto it = node_->find(key);
    return it == node_->end() ? nullptr : &*it;
  }

  Reader child(const std::string& key) { return Reader(issues_, get(key), at(key)); }

  double number(const std::string& key, double fallback, const std::function<bool(double)>& ok = {},
                const char* requirement = nullptr) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) {
      fail(key, "expected a number");
      return fallback;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      fail(key, "must be finite");
      return fallback;
    }
    if (ok && !ok(x)) {
      fail(key, requirement ? requirement : "out of range");
      return fallback;
    }
    return x;
  }

  double required_number(const std::string& key, const std::function<bool(double)>& ok = {},
                         const char* requirement = nullptr) {
    if (!has(key)) {
      get(key);
      fail(key, "required");
      return 0.0;
    }
    return number(key, 0.0, ok, requirement);
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) {
      fail(key, "expected an integer");
      return fallback;
    }
    const long long x = v->get<long long>();
    if (x < lo || x > hi) {
      fail(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return fallback;
    }
    return x;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) {
      fail(key, "expected true or false");
      return fallback;
    }
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed = {}) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) {
      fail(key, "expected a string");
      return fallback;
    }
    const std::string s = v->get<std::string>();
    if (!allowed.empty()) {
      bool found = false;
      for (const std::string& a : allowed) found = found || a == s;
      if (!found) {
        std::string list;
        for (const std::string& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(key, "must be one of: " + list);
        return fallback;
      }
    }
    return s;
  }

  /// Array of numbers, or a scalar broadcast to `size` entries (size > 0).
  std::vector<double> numbers(const std::string& key, std::size_t size, const std::function<bool(double)>& ok,
                              const char* requirement, bool required, double fallback = 0.0) {
    const json* v = get(key);
    if (!v) {
      if (required) fail(key, "required");
      return std::vector<double>(size, fallback);
    }
    std::vector<double> out;
    if (v->is_number()) {
      out.assign(size == 0 ? 1 : size, v->get<double>());
      if (!std::isfinite(out[0]) || (ok && !ok(out[0]))) {
        fail(key, requirement ? requirement : "out of range");
      }
      return out;
    }
    if (!v->is_array()) {
      fail(key, "expected a number or an array of numbers");
      return std::vector<double>(size, fallback);
    }
    if (size > 0 && v->size() != size) {
      fail(key, "expected " + std::to_string(size) + " entries, got " + std::to_string(v->size()));
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      const std::string p = at(key) + "/" + std::to_string(i);
      if (!e.is_number()) {
        issues_.push_back({p, "expected a number"});
        out.push_back(fallback);
        continue;
      }
      const double x = e.get<double>();
      if (!std::isfinite(x) || (ok && !ok(x))) issues_.push_back({p, requirement ? requirement : "out of range"});
      out.push_back(x);
    }
    return out;
  }

  /// Either an explicit array or {"start", "stop", "count"}.
  std::vector<double> grid(const std::string& key, const std::function<bool(double)>& ok, const char* requirement,
                           const std::vector<double>& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (v->is_object()) {
      Reader g(issues_, v, at(key));
      const double start = g.required_number("start", ok, requirement);
      const double stop = g.required_number("stop", ok, requirement);
      const long long count = g.integer("count", 0, 1, 100000);
      if (!g.has("count")) g.fail("count", "required");
      g.finish();
      std::vector<double> out;
      for (long long i = 0; i < count; ++i) {
        out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1));
      }
      return out;
    }
    std::vector<double> out = numbers(key, 0, ok, requirement, false);
    if (v->is_number()) return out;
    if (out.empty()) fail(key, "grid must not be empty");
    return out;
  }

  void finish() {
    if (!node_) return;
    for (auto it = node_->begin(); it != node_->end(); ++it) {
      if (!seen_.count(it.key())) issues_.push_back({at(it.key()), "unknown key"});
    }
  }

 private:
  std::vector<SchemaIssue>& issues_;
  const json* node_;
  std::string pointer_;
  std::set<std::string> seen_;
};

bool positive(double x) { return x > 0.0; }
bool non_negative(double x) { return x >= 0.0; }
bool any(double) { return true; }

std::uint32_t parse_label(const std::string& s, int n, bool& ok) {
  ok = static_cast<int>(s.size()) == n;
  std::uint32_t index = 0;
  for (int h = 0; ok && h < n; ++h) {
    if (s[h] == 'd') index |= 1u << h;
    else if (s[h] != 'u') ok = false;
  }
  return index;
}

void parse_circuit(Reader r, RunConfig& c, std::vector<SchemaIssue>& issues) {
  if (!r.present()) {
    issues.push_back({"/circuit", "required"});
    return;
  }
  const json* js = r.get("junctions");
  std::vector<JunctionParams> junctions;
  if (!js) {
    r.fail("junctions", "required");
  } else if (!js->is_array() || js->size() < 2 || js->size() > 12) {
    r.fail("junctions", "expected an array of 2 to 12 junctions");
  } else {
    for (std::size_t i = 0; i < js->size(); ++i) {
      Reader j(issues, &(*js)[i], r.at("junctions") + "/" + std::to_string(i));
      JunctionParams p;
      p.e0_ghz = j.required_number("E0_GHz");
      p.e_sigma_ghz = j.required_number("Esigma_GHz", non_negative, "must be >= 0");
      j.finish();
      junctions.push_back(p);
    }
  }
  const std::size_t n = junctions.size();
  c.circuit.junctions = junctions;
  c.circuit.vertical_nh = r.numbers("L_vertical_nH", n, positive, "must be > 0", true, 1.0);
  c.circuit.coupling_nh = r.numbers("L_coupling_nH", n > 0 ? n - 1 : 0, positive, "must be > 0", true, 1.0);
  c.circuit.external_flux_rad = r.numbers("flux_rad", n, any, nullptr, false, 0.0);
  const std::string sign = r.string("junction_sign", "appendix", {"appendix", "energy_phase"});
  c.circuit.sign = sign == "appendix" ? JunctionSign::kAppendix : JunctionSign::kEnergyPhase;
  r.finish();
}

void parse_line(Reader r, RunConfig& c) {
  LineConfig& l = c.line;
  l.target_f0_ghz = 9.0;
  if (!r.present()) return;
  l.line.z_c_ohm = r.number("Zc_ohm", l.line.z_c_ohm, positive, "must be > 0");
  l.line.v_eff_m_per_s = units::kSpeedOfLight * r.number("v_eff_over_c", 0.39, positive, "must be > 0");
  l.line.impedance_factor = r.number("impedance_factor", l.line.impedance_factor, positive, "must be > 0");
  l.bracket.min_m = 1e-3 * r.number("length_min_mm", 1e3 * l.bracket.min_m, positive, "must be > 0");
  l.bracket.max_m = 1e-3 * r.number("length_max_mm", 1e3 * l.bracket.max_m, positive, "must be > 0");
  if (!(l.bracket.min_m < l.bracket.max_m)) r.fail("length_max_mm", "must exceed length_min_mm");
  const bool has_length = r.has("length_mm");
  const bool has_target = r.has("target_f0_GHz");
  if (has_length && has_target) r.fail("length_mm", "give either length_mm or target_f0_GHz, not both");
  if (has_length) {
    l.line.length_m = 1e-3 * r.number("length_mm", 1e3 * l.line.length_m, [](double x) { return x >= 1e-2 && x <= 1e2; },
                                      "must be in [0.01, 100] mm");
    l.target_f0_ghz.reset();
  }
  if (has_target) l.target_f0_ghz = r.number("target_f0_GHz", 9.0, positive, "must be > 0");
  r.finish();
}

void parse_solver(Reader r, SolverOptions& s) {
  if (!r.present()) return;
  s.tolerance = r.number("tolerance_GHz_per_rad", s.tolerance, positive, "must be > 0");
  s.max_iterations = static_cast<int>(r.integer("max_iterations", s.max_iterations, 1, 100000));
  s.restart_seeds = static_cast<int>(r.integer("restart_seeds", s.restart_seeds, 0, 1000));
  s.restart_amplitude = r.number("restart_amplitude_rad", s.restart_amplitude, positive, "must be > 0");
  s.psd_tolerance = r.number("psd_tolerance", s.psd_tolerance, positive, "must be > 0");
  r.finish();
}

void parse_scan(Reader r, RunConfig& c, bool required) {
  ScanConfig& s = c.scan;
  if (!r.present()) {
    if (required) r.fail("", "required for the scan task");
    return;
  }
  s.vertical_nh = r.grid("L_vertical_nH", positive, "must be > 0", {});
  s.coupling_nh = r.grid("L_coupling_nH", positive, "must be > 0", {});
  if (s.vertical_nh.empty()) r.fail("L_vertical_nH", "required");
  if (s.coupling_nh.empty()) r.fail("L_coupling_nH", "required");
  if (const json* o = r.get("outputs")) {
    s.ising = s.dispersive = s.edsr = false;
    if (!o->is_array() || o->empty()) {
      r.fail("outputs", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < o->size(); ++i) {
        const json& e = (*o)[i];
        const std::string v = e.is_string() ? e.get<std::string>() : "";
        if (v == "ising") s.ising = true;
        else if (v == "dispersive") s.dispersive = true;
        else if (v == "edsr") s.edsr = true;
        else r.fail("outputs", "entry " + std::to_string(i) + " must be ising, dispersive or edsr");
      }
    }
  }
  r.finish();
}

void parse_spectrum(Reader r, RunConfig& c, bool required) {
  SpectrumConfig& s = c.spectrum;
  const int n = static_cast<int>(c.circuit.num_spins());
  if (!r.present()) {
    if (required) r.fail("", "required for the spectrum task");
    return;
  }
  s.flux_index = static_cast<std::size_t>(r.integer("flux_loop", 1, 1, std::max(1, n)) - 1);
  s.grid_rad = r.grid("flux_grid_rad", any, nullptr, {});
  if (s.grid_rad.empty()) r.fail("flux_grid_rad", "required");
  for (std::size_t i = 1; i < s.grid_rad.size(); ++i) {
    if (!(s.grid_rad[i] > s.grid_rad[i - 1])) {
      r.fail("flux_grid_rad", "grid must be strictly increasing");
      break;
    }
  }
  if (const json* cs = r.get("configs")) {
    if (!cs->is_array()) {
      r.fail("configs", "expected an array of labels such as \"uud\"");
    } else {
      for (std::size_t i = 0; i < cs->size(); ++i) {
        bool ok = (*cs)[i].is_string();
        const std::uint32_t idx = ok ? parse_label((*cs)[i].get<std::string>(), n, ok) : 0;
        if (!ok) {
          r.fail("configs", "entry " + std::to_string(i) + " is not a " + std::to_string(n) + "-letter u/d label");
        } else {
          s.configs.push_back(idx);
        }
      }
    }
  }
  r.finish();
}

void parse_dynamics(Reader r, DynamicsConfig& d) {
  if (!r.present()) return;
  d.sequence = r.string("sequence", d.sequence, {"three_pi", "arbitrary_theta"});
  d.theta_rad = r.number("theta_rad", d.theta_rad);
  d.rabi_over_gap = r.number("rabi_over_gap", d.rabi_over_gap, [](double x) { return x > 0.0 && x <= 0.02; },
                             "must be in (0, 0.02]");
  d.dt_ns = r.number("dt_ns", d.dt_ns, non_negative, "must be >= 0 (0 picks the default)");
  d.include_self_term = r.boolean("include_self_term", d.include_self_term);
  d.max_samples = static_cast<int>(r.integer("max_samples", d.max_samples, 2, 1000000));
  r.finish();
}

void parse_optimize(Reader r, OptimizeConfig& o) {
  if (!r.present()) return;
  o.theta_rad = r.number("theta_rad", o.theta_rad);
  o.duration_ns = r.number("duration_ns", o.duration_ns, positive, "must be > 0");
  o.num_steps = static_cast<int>(r.integer("num_steps", o.num_steps, 1, 10000000));
  o.iterations = static_cast<int>(r.integer("iterations", o.iterations, 0, 1000000));
  o.lambda_a = r.number("lambda_a", o.lambda_a, positive, "must be > 0");
  o.guess_amplitude_ghz = r.number("guess_amplitude_GHz", o.guess_amplitude_ghz, non_negative, "must be >= 0");
  o.flank_fraction = r.number("flank_fraction", o.flank_fraction, [](double x) { return x > 0.0 && x <= 0.5; },
                              "must be in (0, 0.5]");
  o.include_self_term = r.boolean("include_self_term", o.include_self_term);
  r.finish();
}

void parse_gates(Reader r, RunConfig& c, bool required) {
  GatesConfig& g = c.gates;
  const int n = static_cast<int>(c.circuit.num_spins());
  if (!r.present()) {
    if (required) r.fail("", "required for the gates task");
    return;
  }
  Reader rz = r.child("rz");
  if (rz.present()) {
    FluxTrajectory t;
    t.flux_index = static_cast<std::size_t>(rz.integer("flux_loop", 1, 1, std::max(1, n)) - 1);
    t.t_ns = rz.numbers("t_ns", 0, any, nullptr, true);
    t.phi_rad = rz.numbers("phi_rad", 0, any, nullptr, true);
    g.rz_subintervals = static_cast<int>(rz.integer("subintervals", g.rz_subintervals, 2, 1000000));
    if (t.t_ns.size() != t.phi_rad.size()) rz.fail("phi_rad", "must have as many entries as t_ns");
    for (std::size_t i = 1; i < t.t_ns.size(); ++i) {
      if (t.t_ns[i] < t.t_ns[i - 1]) {
        rz.fail("t_ns", "times must not decrease");
        break;
      }
    }
    if (t.t_ns.size() < 2) rz.fail("t_ns", "needs at least two knots");
    if (!t.phi_rad.empty() && (t.phi_rad.front() != 0.0 || t.phi_rad.back() != 0.0)) {
      rz.fail("phi_rad", "flux must start and end at exactly 0");
    }
    rz.finish();
    g.rz = t;
  }
  Reader rzz = r.child("rzz");
  if (rzz.present()) {
    RzzConfig z;
    z.t_ns = rzz.numbers("t_ns", 0, any, nullptr, true);
    z.j_inter_ghz = rzz.numbers("J_inter_GHz", 0, any, nullptr, true);
    if (z.t_ns.size() != z.j_inter_ghz.size()) rzz.fail("J_inter_GHz", "must have as many entries as t_ns");
    rzz.finish();
    g.rzz = z;
  }
  if (!g.rz && !g.rzz) r.fail("", "needs rz, rzz or both");
  r.finish();
}

void parse_qec(Reader r, QecConfig& q) {
  if (!r.present()) return;
  q.kappa_ghz = r.number("kappa_GHz", q.kappa_ghz, positive, "must be > 0");
  q.duration_gaps = r.number("duration_gaps", q.duration_gaps, positive, "must be > 0");
  q.random_states = static_cast<int>(r.integer("random_states", q.random_states, 0, 100000));
  q.seed = static_cast<std::uint64_t>(r.integer("seed", static_cast<long long>(q.seed), 0, (1LL << 62)));
  r.finish();
}

json grid_json(const std::vector<double>& v) { return json(v); }

}  // namespace

const char* task_name(Task t) {
  for (const auto& [task, name] : task_table()) {
    if (task == t) return name.c_str();
  }
  return "unknown";
}

Task task_from_name(const std::string& name) {
  for (const auto& [task, n] : task_table()) {
    if (n == name) return task;
  }
  throw InvalidArgument("unknown task '" + name + "'");
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [task, n] : task_table()) v.push_back(n);
    return v;
  }();
  return names;
}

RunConfig parse_config(const json& document) {
  std::vector<SchemaIssue> issues;
  RunConfig c;
  if (!document.is_object()) throw ConfigError("", "config must be a JSON object");
  Reader root(issues, &document, "");
  const std::string task = root.string("task", "", task_names());
  if (!root.has("task")) root.fail("task", "required");
  if (!task.empty()) c.task = task_from_name(task);

  parse_circuit(root.child("circuit"), c, issues);
  parse_line(root.child("line"), c);
  parse_solver(root.child("solver"), c.solver);
  parse_scan(root.child("scan"), c, c.task == Task::kScan && !task.empty());
  parse_spectrum(root.child("spectrum"), c, c.task == Task::kSpectrum && !task.empty());
  parse_dynamics(root.child("dynamics"), c.dynamics);
  parse_optimize(root.child("optimize"), c.optimize);
  parse_gates(root.child("gates"), c, c.task == Task::kGates && !task.empty());
  parse_qec(root.child("qec"), c.qec);
  Reader out = root.child("output");
  if (out.present()) {
    c.output_dir = out.string("dir", c.output_dir);
    if (c.output_dir.empty()) out.fail("dir", "must not be empty");
    out.finish();
  }
  root.finish();

  if (issues.empty()) {
    try {
      c.circuit.validate();
    } catch (const Error& e) {
      issues.push_back({"/circuit", e.what()});
    }
    const bool three_only = c.task == Task::kDynamics || c.task == Task::kOptimize || c.task == Task::kQec;
    if (three_only && c.circuit.num_spins() != 3) {
      issues.push_back({"/circuit/junctions", "this task is defined for three junctions"});
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(const std::string& path) { return parse_config_text(read_text_file(path)); }

json to_json(const RunConfig& c) {
  json j;
  j["task"] = task_name(c.task);
  json junctions = json::array();
  for (const JunctionParams& p : c.circuit.junctions) junctions.push_back({{"E0_GHz", p.e0_ghz}, {"Esigma_GHz", p.e_sigma_ghz}});
  j["circuit"] = {
      {"junctions", junctions},
      {"L_vertical_nH", c.circuit.vertical_nh},
      {"L_coupling_nH", c.circuit.coupling_nh},
      {"flux_rad", c.circuit.external_flux_rad},
      {"junction_sign", c.circuit.sign == JunctionSign::kAppendix ? "appendix" : "energy_phase"},
  };
  json line = {
      {"Zc_ohm", c.line.line.z_c_ohm},
      {"v_eff_over_c", c.line.line.v_eff_m_per_s / units::kSpeedOfLight},
      {"impedance_factor", c.line.line.impedance_factor},
      {"length_min_mm", 1e3 * c.line.bracket.min_m},
      {"length_max_mm", 1e3 * c.line.bracket.max_m},
  };
  if (c.line.target_f0_ghz) line["target_f0_GHz"] = *c.line.target_f0_ghz;
  else line["length_mm"] = 1e3 * c.line.line.length_m;
  j["line"] = line;
  j["solver"] = {
      {"tolerance_GHz_per_rad", c.solver.tolerance},
      {"max_iterations", c.solver.max_iterations},
      {"restart_seeds", c.solver.restart_seeds},
      {"restart_amplitude_rad", c.solver.restart_amplitude},
      {"psd_tolerance", c.solver.psd_tolerance},
  };
  if (!c.scan.vertical_nh.empty() || !c.scan.coupling_nh.empty()) {
    json outputs = json::array();
    if (c.scan.ising) outputs.push_back("ising");
    if (c.scan.dispersive) outputs.push_back("dispersive");
    if (c.scan.edsr) outputs.push_back("edsr");
    j["scan"] = {{"L_vertical_nH", grid_json(c.scan.vertical_nh)},
                 {"L_coupling_nH", grid_json(c.scan.coupling_nh)},
                 {"outputs", outputs}};
  }
  if (!c.spectrum.grid_rad.empty()) {
    json configs = json::array();
    for (std::uint32_t b : c.spectrum.configs) configs.push_back(SpinConfig(static_cast<int>(c.circuit.num_spins()), b).label());
    j["spectrum"] = {{"flux_loop", c.spectrum.flux_index + 1},
                     {"flux_grid_rad", grid_json(c.spectrum.grid_rad)},
                     {"configs", configs}};
  }
  j["dynamics"] = {
      {"sequence", c.dynamics.sequence},
      {"theta_rad", c.dynamics.theta_rad},
      {"rabi_over_gap", c.dynamics.rabi_over_gap},
      {"dt_ns", c.dynamics.dt_ns},
      {"include_self_term", c.dynamics.include_self_term},
      {"max_samples", c.dynamics.max_samples},
  };
  j["optimize"] = {
      {"theta_rad", c.optimize.theta_rad},
      {"duration_ns", c.optimize.duration_ns},
      {"num_steps", c.optimize.num_steps},
      {"iterations", c.optimize.iterations},
      {"lambda_a", c.optimize.lambda_a},
      {"guess_amplitude_GHz", c.optimize.guess_amplitude_ghz},
      {"flank_fraction", c.optimize.flank_fraction},
      {"include_self_term", c.optimize.include_self_term},
  };
  if (c.gates.rz || c.gates.rzz) {
    json g = json::object();
    if (c.gates.rz) {
      g["rz"] = {{"flux_loop", c.gates.rz->flux_index + 1},
                 {"t_ns", c.gates.rz->t_ns},
                 {"phi_rad", c.gates.rz->phi_rad},
                 {"subintervals", c.gates.rz_subintervals}};
    }
    if (c.gates.rzz) g["rzz"] = {{"t_ns", c.gates.rzz->t_ns}, {"J_inter_GHz", c.gates.rzz->j_inter_ghz}};
    j["gates"] = g;
  }
  j["qec"] = {
      {"kappa_GHz", c.qec.kappa_ghz},
      {"duration_gaps", c.qec.duration_gaps},
      {"random_states", c.qec.random_states},
      {"seed", c.qec.seed},
  };
  j["output"] = {{"dir", c.output_dir}};
  return j;
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace isene
