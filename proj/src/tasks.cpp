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

#include "isene/tasks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Core>

#include "isene/equilibrium.hpp"
#include "isene/errors.hpp"
#include "isene/extraction.hpp"
#include "isene/gates.hpp"
#include "isene/kernels.hpp"
#include "isene/krotov.hpp"
#include "isene/pulses.hpp"
#include "isene/qec.hpp"
#include "isene/resonator.hpp"
#include "isene/spin_dynamics.hpp"
#include "isene/units.hpp"

namespace isene {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw DimensionMismatch("csv row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << out_.str();
  }

 private:
  std::size_t columns_;
  std::ostringstream out_;
};

std::string d(double x) { return format_double(x); }
std::string i(long long x) { return std::to_string(x); }

struct Context {
  const RunConfig& config;
  const RunOptions& options;
  std::filesystem::path dir;
  RunOutcome& outcome;

  void save(const std::string& name, const Csv& csv) {
    csv.save(dir / name);
    outcome.files.push_back(name);
  }
  void save_json(const std::string& name, const json& j) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    f << j.dump(2) << '\n';
    outcome.files.push_back(name);
  }
};

int spins_of(const RunConfig& c) { return static_cast<int>(c.circuit.num_spins()); }

std::vector<std::string> pair_names(int n, const char* prefix) {
  std::vector<std::string> out;
  for (int h = 0; h < n; ++h) {
    for (int k = h + 1; k < n; ++k) out.push_back(std::string(prefix) + std::to_string(h + 1) + std::to_string(k + 1));
  }
  return out;
}

json pairs_mhz(const WalshCoefficients& w) {
  json j = json::object();
  for (int h = 0; h < w.num_spins; ++h) {
    for (int k = h + 1; k < w.num_spins; ++k) j[std::to_string(h + 1) + std::to_string(k + 1)] = summary_mhz(w.pair(h, k));
  }
  return j;
}

std::string mask_spins(std::uint32_t mask, int n) {
  std::string s;
  for (int h = 0; h < n; ++h) {
    if (mask & (1u << h)) s += std::to_string(h + 1);
  }
  return s.empty() ? "-" : s;
}

// Line with either the configured length or one calibrated on `solutions`.
TransmissionLine resolve_line(const RunConfig& c, const std::vector<EquilibriumSolution>& solutions, json& summary) {
  TransmissionLine line = c.line.line;
  if (c.line.target_f0_ghz) {
    const Calibration cal = calibrate_length(solutions, line, *c.line.target_f0_ghz, c.line.bracket);
    line.length_m = cal.length_m;
    summary["calibration"] = {{"target_f0_GHz", *c.line.target_f0_ghz},
                              {"length_mm", 1e3 * cal.length_m},
                              {"f_r0_GHz", cal.reference_frequency_ghz},
                              {"iterations", cal.iterations}};
  }
  summary["line"] = {{"Zc_ohm", line.z_c_ohm},
                     {"v_eff_m_per_s", line.v_eff_m_per_s},
                     {"length_mm", 1e3 * line.length_m},
                     {"impedance_factor", line.impedance_factor}};
  return line;
}

Csv equilibrium_csv(const std::vector<EquilibriumSolution>& sols, int n) {
  std::vector<std::string> h = {"config_index"};
  for (int k = 1; k <= n; ++k) h.push_back("sigma_" + i(k));
  for (const char* s : {"phi_in_star", "E_g_GHz", "E_L_GHz"}) h.push_back(s);
  for (int k = 1; k <= n; ++k) h.push_back("drop_" + i(k));
  Csv csv(h);
  for (std::size_t b = 0; b < sols.size(); ++b) {
    const SpinConfig c(n, static_cast<std::uint32_t>(b));
    std::vector<std::string> row = {i(static_cast<long long>(b))};
    for (int k = 0; k < n; ++k) row.push_back(i(c.sigma(k)));
    row.push_back(d(sols[b].phases_star.phi_in));
    row.push_back(d(sols[b].energy_ghz));
    row.push_back(d(sols[b].inductive_energy_ghz));
    for (double x : sols[b].junction_drops) row.push_back(d(x));
    csv.row(row);
  }
  return csv;
}

Csv readout_csv(const ReadoutTable& t) {
  Csv csv({"config_index", "E_L_GHz", "f_r_GHz"});
  for (std::size_t b = 0; b < t.frequency_ghz.size(); ++b) {
    csv.row({i(static_cast<long long>(b)), d(t.inductive_energy_ghz[b]), d(t.frequency_ghz[b])});
  }
  return csv;
}

json kramers_json(const KramersNullReport& r) {
  return {{"kramers_point", r.kramers_point},
          {"max_odd_energy_MHz", r.max_odd_energy_ghz * 1e3},
          {"max_odd_frequency_MHz", r.max_odd_frequency_ghz * 1e3},
          {"max_degeneracy_splitting_GHz", r.max_degeneracy_splitting_ghz},
          {"tolerance_MHz", r.tolerance_ghz * 1e3},
          {"passed", r.passed()}};
}

void task_solve(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto sols = solve_all_configs(c.circuit, c.solver, ctx.options.threads);
  ctx.save("equilibrium.csv", equilibrium_csv(sols, spins_of(c)));
  const TransmissionLine line = resolve_line(c, sols, ctx.outcome.summary);
  ctx.save("readout.csv", readout_csv(readout_table(sols, line)));
  int max_iter = 0;
  double max_res = 0.0;
  for (const auto& s : sols) {
    max_iter = std::max(max_iter, s.iterations);
    max_res = std::max(max_res, s.residual);
  }
  ctx.outcome.summary["max_newton_iterations"] = max_iter;
  ctx.outcome.summary["max_residual"] = max_res;
}

void task_extract(Context& ctx) {
  const RunConfig& c = ctx.config;
  if (!c.circuit.is_kramers_point()) throw NotKramersPoint("extract needs every flux at 0 or pi; use the check task");
  const int n = spins_of(c);
  const auto sols = solve_all_configs(c.circuit, c.solver, ctx.options.threads);
  json& s = ctx.outcome.summary;
  const TransmissionLine line = resolve_line(c, sols, s);
  const IsingModel ising = extract_ising(sols);
  const DispersiveModel disp = extract_dispersive(sols, line);
  const EdsrWeights edsr = extract_edsr_weights(sols);

  Csv coeffs({"quantity", "mask", "order", "spins", "value_GHz"});
  for (const auto& [name, w] : {std::pair{"energy", &ising.energy}, std::pair{"frequency", &disp.frequency}}) {
    for (std::uint32_t m = 0; m < w->c.size(); ++m) {
      coeffs.row({name, i(m), i(WalshCoefficients::order(m)), mask_spins(m, n), d(w->c[m])});
    }
  }
  ctx.save("coefficients.csv", coeffs);
  Csv a({"junction", "spin", "A"});
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) a.row({i(j + 1), i(k + 1), d(edsr.a(j, k))});
  }
  ctx.save("edsr.csv", a);

  s["J_MHz"] = pairs_mhz(ising.energy);
  s["chi_MHz"] = pairs_mhz(disp.frequency);
  s["f_r0_GHz"] = disp.f0_ghz();
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < n; ++j) {
    std::vector<double> r;
    for (int k = 0; k < n; ++k) r.push_back(edsr.a(j, k));
    rows.push_back(r);
  }
  s["A"] = rows;
  s["A_max_offdiagonal"] = edsr.max_abs_off_diagonal();
  s["A_truncation_residual_rad"] = edsr.truncation_residual;
  s["max_odd_energy_MHz"] = ising.energy.max_abs_odd() * 1e3;
  s["max_odd_frequency_MHz"] = disp.frequency.max_abs_odd() * 1e3;
}

void task_scan(Context& ctx) {
  const RunConfig& c = ctx.config;
  const int n = spins_of(c);
  ScanRequest req;
  req.vertical_nh = c.scan.vertical_nh;
  req.coupling_nh = c.scan.coupling_nh;
  req.want_ising = c.scan.ising;
  req.want_dispersive = c.scan.dispersive;
  req.want_edsr = c.scan.edsr;
  req.target_f0_ghz = c.line.target_f0_ghz.value_or(9.0);
  req.bracket = c.line.bracket;
  TransmissionLine line = c.line.line;
  const auto points = scan_2d(c.circuit, line, req, c.solver, ctx.options.threads);

  std::vector<std::string> header = {"L_vertical_nH", "L_coupling_nH"};
  for (const auto& p : pair_names(n, "J")) header.push_back(p + "_MHz");
  for (const auto& p : pair_names(n, "chi")) header.push_back(p + "_MHz");
  for (const char* h : {"f_r0_GHz", "length_mm", "A_max_offdiagonal", "status"}) header.push_back(h);
  Csv csv(header);
  int failed = 0;
  for (const ScanPoint& p : points) {
    std::vector<std::string> row = {d(p.vertical_nh), d(p.coupling_nh)};
    for (int h = 0; h < n; ++h) {
      for (int k = h + 1; k < n; ++k) row.push_back(p.ising ? d(p.ising->j(h, k) * 1e3) : "nan");
    }
    for (int h = 0; h < n; ++h) {
      for (int k = h + 1; k < n; ++k) row.push_back(p.dispersive ? d(p.dispersive->chi(h, k) * 1e3) : "nan");
    }
    row.push_back(p.dispersive ? d(p.dispersive->f0_ghz()) : "nan");
    row.push_back(p.dispersive ? d(p.dispersive->length_m * 1e3) : "nan");
    row.push_back(p.edsr ? d(p.edsr->max_abs_off_diagonal()) : "nan");
    std::string status = p.error.empty() ? "ok" : p.error;
    for (char& ch : status) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    row.push_back(status);
    if (!p.error.empty()) ++failed;
    csv.row(row);
  }
  ctx.save("scan.csv", csv);
  ctx.outcome.summary["points"] = points.size();
  ctx.outcome.summary["failed_points"] = failed;
}

void task_spectrum(Context& ctx) {
  const RunConfig& c = ctx.config;
  const int n = spins_of(c);
  std::vector<std::uint32_t> configs = c.spectrum.configs;
  if (configs.empty()) {
    for (std::uint32_t b = 0; b < SpinConfig::count(n); ++b) configs.push_back(b);
  }
  const SpectrumTable t = spectrum_vs_flux(c.circuit, configs, c.spectrum.flux_index, c.spectrum.grid_rad, c.solver);
  std::vector<std::string> header = {"flux_rad"};
  for (std::uint32_t b : configs) header.push_back("E_" + SpinConfig(n, b).label() + "_GHz");
  header.push_back("discontinuity");
  Csv csv(header);
  for (std::size_t g = 0; g < t.flux_grid_rad.size(); ++g) {
    std::vector<std::string> row = {d(t.flux_grid_rad[g])};
    for (double e : t.energy_ghz[g]) row.push_back(d(e));
    bool jump = std::find(t.discontinuities.begin(), t.discontinuities.end(), g) != t.discontinuities.end();
    row.push_back(jump ? "1" : "0");
    csv.row(row);
  }
  ctx.save("spectrum.csv", csv);
  ctx.outcome.summary["flux_loop"] = c.spectrum.flux_index + 1;
  ctx.outcome.summary["discontinuities"] = t.discontinuities.size();
}

struct ReferenceModel {
  Eigen::MatrixXd j;
  Eigen::MatrixXd a;
};

ReferenceModel spin_model(const Context& ctx) {
  const RunConfig& c = ctx.config;
  if (!c.circuit.is_kramers_point()) throw NotKramersPoint("spin dynamics needs every flux at 0 or pi");
  const auto sols = solve_all_configs(c.circuit, c.solver, ctx.options.threads);
  return {ising_matrix(extract_ising(sols)), extract_edsr_weights(sols).a};
}

void write_trajectory(Context& ctx, const std::string& name, const SpinHamiltonian& h, const PulseSchedule& s,
                      int max_samples, json& summary) {
  const LogicalFrame frame = LogicalFrame::build(h);
  PropagateOptions po;
  po.sample_every = std::max(1, (s.num_steps + max_samples - 2) / (max_samples - 1));
  const Trajectory tr = propagate(h, s, frame.up(), po);
  std::vector<std::string> header = {"t_ns"};
  for (int b = 0; b < h.dim(); ++b) {
    const std::string l = SpinConfig(h.num_spins, static_cast<std::uint32_t>(b)).label();
    header.push_back("re_" + l);
    header.push_back("im_" + l);
  }
  for (const char* x : {"W", "alpha_plus", "alpha_minus", "theta_rad"}) header.push_back(x);
  Csv csv(header);
  std::vector<double> raw;
  std::vector<LogicalDecomposition> dec;
  for (const StateVector& psi : tr.states) {
    dec.push_back(logical_decompose(psi, frame));
    raw.push_back(dec.back().theta());
  }
  const std::vector<double> theta = unwrap(raw);
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    std::vector<std::string> row = {d(tr.t_ns[k])};
    for (const cplx& z : tr.states[k]) {
      row.push_back(d(z.real()));
      row.push_back(d(z.imag()));
    }
    row.push_back(d(dec[k].w));
    row.push_back(d(dec[k].alpha_plus));
    row.push_back(d(dec[k].alpha_minus));
    row.push_back(d(theta[k]));
    csv.row(row);
  }
  ctx.save(name, csv);
  summary["final_W"] = dec.back().w;
  summary["final_theta_rad"] = theta.back();
}

void task_dynamics(Context& ctx) {
  const RunConfig& c = ctx.config;
  const DynamicsConfig& dc = c.dynamics;
  const ReferenceModel m = spin_model(ctx);
  const TransitionSpectrum spec = transition_spectrum(m.j);
  const double rabi = dc.rabi_over_gap * spec.gap_ghz;
  SequenceOptions so;
  so.dt_ns = dc.dt_ns;
  so.include_self_term = dc.include_self_term;
  const Sequence seq = dc.sequence == "three_pi" ? three_pi_sequence(m.j, m.a, rabi, so)
                                                 : sequence_arbitrary_theta(m.j, m.a, dc.theta_rad, rabi, so);
  const double theta = dc.sequence == "three_pi" ? units::kPi : dc.theta_rad;
  const SpinHamiltonian h = static_hamiltonian(m.j);

  Csv pulses({"label", "spin", "from", "to", "frequency_GHz", "area_rad", "carrier_phase_rad", "amplitude_GHz",
              "first_step", "num_steps"});
  for (const SequencePulse& p : seq.pulses) {
    pulses.row({p.label, i(p.spin + 1), SpinConfig(3, p.from).label(), SpinConfig(3, p.to).label(), d(p.frequency_ghz),
                d(p.area_rad), d(p.carrier_phase_rad), d(p.amplitude_ghz), i(p.first_step), i(p.num_steps)});
  }
  ctx.save("sequence.csv", pulses);
  Csv lines({"spin", "others_aligned", "frequency_GHz"});
  for (const ConditionalTransition& t : spec.lines) lines.row({i(t.spin + 1), t.others_aligned ? "1" : "0", d(t.frequency_ghz)});
  ctx.save("lines.csv", lines);

  json& s = ctx.outcome.summary;
  const CMatrix u = schedule_propagator(h, seq.schedule);
  s["fidelity"] = gate_fidelity(u, GateObjective{theta});
  s["target_theta_rad"] = theta;
  s["gap_MHz"] = spec.gap_ghz * 1e3;
  s["rabi_MHz"] = rabi * 1e3;
  s["num_steps"] = seq.schedule.num_steps;
  s["duration_ns"] = seq.schedule.duration_ns;
  write_trajectory(ctx, "trajectory.csv", h, seq.schedule, dc.max_samples, s);
}

void task_optimize(Context& ctx) {
  const RunConfig& c = ctx.config;
  const OptimizeConfig& oc = c.optimize;
  const ReferenceModel m = spin_model(ctx);
  const SpinHamiltonian h = static_hamiltonian(m.j);
  const PulseSchedule guess = krotov_guess(m.j, m.a, oc.duration_ns, oc.num_steps, oc.guess_amplitude_ghz,
                                           oc.flank_fraction, oc.include_self_term);
  KrotovOptions ko;
  ko.lambda_a = oc.lambda_a;
  ko.iterations = oc.iterations;
  ko.threads = ctx.options.threads;
  const KrotovResult r = krotov_optimize(h, GateObjective{oc.theta_rad}, guess, ko);

  const PulseSchedule& s = r.schedule;
  Csv pulses({"t_ns", "M1_GHz", "M2_GHz", "M3_GHz"});
  for (int k = 0; k <= s.num_steps; ++k) {
    pulses.row({d(k * s.dt_ns()), d(s.node_envelope_ghz(0, k)), d(s.node_envelope_ghz(1, k)), d(s.node_envelope_ghz(2, k))});
  }
  ctx.save("pulses.csv", pulses);
  Csv trace({"iteration", "fidelity"});
  for (std::size_t k = 0; k < r.fidelity.size(); ++k) trace.row({i(static_cast<long long>(k)), d(r.fidelity[k])});
  ctx.save("fidelity.csv", trace);

  json& sum = ctx.outcome.summary;
  json carriers = json::array();
  for (const DriveChannel& ch : s.channels) {
    json list = json::array();
    for (const Carrier& car : ch.carriers) list.push_back({{"frequency_GHz", car.frequency_ghz}, {"phase_rad", car.phase_rad}});
    carriers.push_back({{"spin", ch.spin + 1}, {"carriers", list}});
  }
  sum["channels"] = carriers;
  sum["lambda_a"] = oc.lambda_a;
  sum["iterations"] = r.iterations;
  sum["max_iterations_reached"] = r.max_iterations_reached;
  sum["fidelity_trace"] = r.fidelity;
  sum["final_fidelity"] = r.fidelity.back();
  sum["full_space_fidelity"] = gate_fidelity(schedule_propagator(h, s), GateObjective{oc.theta_rad});
  sum["target_theta_rad"] = oc.theta_rad;
  write_trajectory(ctx, "theta.csv", h, s, std::min(s.num_steps + 1, 5001), sum);
}

void task_gates(Context& ctx) {
  const RunConfig& c = ctx.config;
  json& s = ctx.outcome.summary;
  if (c.gates.rz) {
    RzOptions o;
    o.subintervals = c.gates.rz_subintervals;
    o.solver = c.solver;
    const RzResult r = rz_phase(c.circuit, *c.gates.rz, o);
    Csv csv({"t_ns", "phi_rad", "delta_E_GHz"});
    for (std::size_t k = 0; k < r.t_ns.size(); ++k) csv.row({d(r.t_ns[k]), d(r.phi_rad[k]), d(r.delta_ghz[k])});
    ctx.save("rz.csv", csv);
    s["rz"] = {{"theta_rad", r.theta_rad}, {"theta_mod_2pi_rad", r.theta_mod_2pi}, {"flux_loop", c.gates.rz->flux_index + 1}};
  }
  if (c.gates.rzz) {
    double min_intra = 0.0;
    if (c.circuit.is_kramers_point()) {
      const IsingModel m = extract_ising(c.circuit, c.solver, ctx.options.threads);
      min_intra = std::numeric_limits<double>::infinity();
      for (int h = 0; h < m.num_spins(); ++h) {
        for (int k = h + 1; k < m.num_spins(); ++k) {
          if (std::abs(m.j(h, k)) > kSummaryZeroGhz) min_intra = std::min(min_intra, std::abs(m.j(h, k)));
        }
      }
      if (!std::isfinite(min_intra)) min_intra = 0.0;
    }
    const RzzResult r = rzz_phase(c.gates.rzz->t_ns, c.gates.rzz->j_inter_ghz, min_intra);
    Csv csv({"t_ns", "J_inter_GHz"});
    for (std::size_t k = 0; k < c.gates.rzz->t_ns.size(); ++k) csv.row({d(c.gates.rzz->t_ns[k]), d(c.gates.rzz->j_inter_ghz[k])});
    ctx.save("rzz.csv", csv);
    s["rzz"] = {{"theta_rad", r.theta_rad}, {"warnings", r.warnings}, {"min_intra_J_MHz", min_intra * 1e3}};
  }
}

// Deterministic uniform double in [0, 1) from the raw engine output.
double unit_draw(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

void task_qec(Context& ctx) {
  const RunConfig& c = ctx.config;
  if (!c.circuit.is_kramers_point()) throw NotKramersPoint("qec needs every flux at 0 or pi");
  const auto sols = solve_all_configs(c.circuit, c.solver, ctx.options.threads);
  json& s = ctx.outcome.summary;
  const TransmissionLine line = resolve_line(c, sols, s);
  const ReadoutTable table = readout_table(sols, line);
  const SyndromeModel model = SyndromeModel::build(table, c.qec.kappa_ghz);

  Csv syn({"config_index", "config", "f_r_GHz", "s12", "s23", "classified_s12", "classified_s23", "correction_spin"});
  int misclassified = 0;
  for (std::uint32_t b = 0; b < 8; ++b) {
    const SpinConfig cfg(3, b);
    const Syndrome truth = Syndrome::of(cfg);
    const Syndrome got = classify_syndrome(table.frequency_ghz[b], model);
    if (!(got == truth)) ++misclassified;
    syn.row({i(b), cfg.label(), d(table.frequency_ghz[b]), i(truth.s12), i(truth.s23), i(got.s12), i(got.s23),
             i(got.correction_spin() + 1)});
  }
  ctx.save("syndromes.csv", syn);

  CorrectionOptions co;
  co.duration_gaps = c.qec.duration_gaps;
  const CorrectionPulses pulses = build_correction_pulses(ising_matrix(extract_ising(sols)), extract_edsr_weights(sols).a, co);

  std::vector<std::pair<cplx, cplx>> states = {{1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
  std::mt19937_64 gen(c.qec.seed);
  for (int k = 0; k < c.qec.random_states; ++k) {
    const double t = std::acos(1.0 - 2.0 * unit_draw(gen));
    const double p = units::kTwoPi * unit_draw(gen);
    states.push_back({std::cos(0.5 * t), std::polar(std::sin(0.5 * t), p)});
  }
  Csv cyc({"case", "injected_error", "alpha_re", "alpha_im", "beta_re", "beta_im", "s12", "s23", "correction_spin",
           "final_W", "pauli_frame", "fidelity"});
  json reports = json::array();
  double worst_w = 0.0;
  double worst_f = 0.0;
  int n_case = 0;
  for (const auto& [alpha, beta] : states) {
    for (int e = -1; e < 3; ++e) {
      const CycleResult r = run_cycle(alpha, beta, e, model, pulses);
      const CycleReport& rep = r.report;
      worst_w = std::max(worst_w, std::abs(1.0 - rep.final_w));
      worst_f = std::max(worst_f, std::abs(1.0 - rep.fidelity));
      cyc.row({i(n_case), i(e + 1), d(alpha.real()), d(alpha.imag()), d(beta.real()), d(beta.imag()),
               i(rep.measured_syndrome.s12), i(rep.measured_syndrome.s23), i(rep.correction_spin + 1), d(rep.final_w),
               rep.pauli_frame, d(rep.fidelity)});
      reports.push_back({{"injected_error", e < 0 ? json(nullptr) : json(e + 1)},
                         {"measured_syndrome", {rep.measured_syndrome.s12, rep.measured_syndrome.s23}},
                         {"correction_spin", rep.correction_spin < 0 ? json(nullptr) : json(rep.correction_spin + 1)},
                         {"final_W", rep.final_w},
                         {"pauli_frame", rep.pauli_frame},
                         {"fidelity", rep.fidelity}});
      ++n_case;
    }
  }
  ctx.save("cycles.csv", cyc);
  ctx.save_json("cycles.json", reports);
  std::vector<double> freqs(model.class_frequency_ghz.begin(), model.class_frequency_ghz.end());
  s["class_frequency_GHz"] = freqs;
  s["min_class_separation_MHz"] = model.min_separation_ghz * 1e3;
  s["kappa_MHz"] = model.kappa_ghz * 1e3;
  s["misclassified_configs"] = misclassified;
  s["cases"] = n_case;
  s["max_abs_1_minus_W"] = worst_w;
  s["max_abs_1_minus_fidelity"] = worst_f;
  if (misclassified > 0) throw NumericError("syndrome classification failed for " + i(misclassified) + " configs");
}

void task_check(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto sols = solve_all_configs(c.circuit, c.solver, ctx.options.threads);
  json& s = ctx.outcome.summary;
  TransmissionLine line = c.line.line;
  if (c.line.target_f0_ghz) line = resolve_line(c, sols, s);
  const KramersNullReport r = kramers_null_report(c.circuit, line, c.solver, ctx.options.threads);
  Csv csv({"quantity", "value_MHz", "tolerance_MHz"});
  csv.row({"max_odd_energy", d(r.max_odd_energy_ghz * 1e3), d(r.tolerance_ghz * 1e3)});
  csv.row({"max_odd_frequency", d(r.max_odd_frequency_ghz * 1e3), d(r.tolerance_ghz * 1e3)});
  csv.row({"max_degeneracy_splitting", d(r.max_degeneracy_splitting_ghz * 1e3), "nan"});
  ctx.save("kramers.csv", csv);
  s["kramers"] = kramers_json(r);
  if (r.kramers_point && !r.passed()) throw NumericError("Kramers nulls violated at a Kramers point");
}

json versions() {
  return {{"isene", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__},
          {"kernels", std::string(kernels::name(kernels::active().isa))}};
}

}  // namespace

RunOutcome run_task(const RunConfig& config, const RunOptions& options) {
  RunOutcome outcome;
  outcome.out_dir = options.out_dir.empty() ? config.output_dir : options.out_dir;
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::path dir(outcome.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    outcome.exit_code = 3;
    outcome.error_kind = "IOError";
    outcome.error_message = "cannot create " + dir.string() + ": " + ec.message();
    return outcome;
  }
  std::filesystem::remove(dir / "error.json", ec);
  outcome.summary = json::object();
  Context ctx{config, options, dir, outcome};
  try {
    switch (config.task) {
      case Task::kSolve: task_solve(ctx); break;
      case Task::kExtract: task_extract(ctx); break;
      case Task::kScan: task_scan(ctx); break;
      case Task::kSpectrum: task_spectrum(ctx); break;
      case Task::kDynamics: task_dynamics(ctx); break;
      case Task::kOptimize: task_optimize(ctx); break;
      case Task::kGates: task_gates(ctx); break;
      case Task::kQec: task_qec(ctx); break;
      case Task::kCheck: task_check(ctx); break;
    }
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.error_kind = e.kind();
    outcome.error_message = e.what();
  } catch (const Error& e) {
    outcome.exit_code = 3;
    outcome.error_kind = e.kind();
    outcome.error_message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.error_kind = "InternalError";
    outcome.error_message = e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest = {
      {"task", task_name(config.task)},
      {"config_hash", config_hash(config)},
      {"config", to_json(config)},
      {"versions", versions()},
      {"tolerances",
       {{"solver_gradient_GHz_per_rad", config.solver.tolerance},
        {"kramers_null_MHz", kKramersNullGhz * 1e3},
        {"resonator_frequency_Hz", 1.0},
        {"summary_zero_MHz", kSummaryZeroGhz * 1e3}}},
      {"threads", options.threads},
      {"seed", options.seed},
      {"wall_time_s", wall},
      {"files", outcome.files},
      {"summary", outcome.summary},
      {"exit_code", outcome.exit_code},
  };
  if (outcome.exit_code != 0) {
    const json err = {{"error", outcome.error_kind}, {"message", outcome.error_message}, {"task", task_name(config.task)}};
    manifest["error"] = err;
    std::ofstream(dir / "error.json", std::ios::binary) << err.dump(2) << '\n';
  }
  std::ofstream(dir / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
  return outcome;
}

}  // namespace isene
