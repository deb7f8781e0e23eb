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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "isene/equilibrium.hpp"
#include "isene/errors.hpp"
#include "isene/extraction.hpp"
#include "isene/gates.hpp"
#include "isene/krotov.hpp"
#include "isene/pulses.hpp"
#include "isene/qec.hpp"
#include "isene/resonator.hpp"
#include "isene/spin_dynamics.hpp"
#include "isene/units.hpp"
#include "oracles.hpp"

using namespace isene;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ChainCircuit reference_circuit() { return ChainCircuit::uniform(reference_junctions(), 2.0, 10.0); }

// Parameters of the supplementary Kramers figure: uniform inductors.
ChainCircuit uniform_circuit(double l_nh) { return ChainCircuit::uniform(reference_junctions(), l_nh, l_nh); }

const LengthBracket kWideBracket{1e-5, 1e-1};

TransmissionLine calibrated(const std::vector<EquilibriumSolution>& sols, LengthBracket bracket) {
  TransmissionLine line;
  line.length_m = calibrate_length(sols, line, 9.0, bracket).length_m;
  return line;
}

void kramers_nulls(Outcome& o) {
  ChainCircuit c = uniform_circuit(5.0);
  double worst = 0.0;
  TransmissionLine line;
  for (double flux : {0.0, units::kPi}) {
    c.external_flux_rad.assign(3, flux);
    const auto sols = solve_all_configs(c);
    line = calibrated(sols, kWideBracket);
    worst = std::max({worst, extract_ising(sols).energy.max_abs_odd(),
                      extract_dispersive(sols, line).frequency.max_abs_odd()});
  }
  o.require(worst * 1e3 < 1e-6, "odd coefficient at a Kramers point");
  c.external_flux_rad = {0.1, 0.0, 0.0};
  const auto sols = solve_all_configs(c);
  const double odd = std::max(extract_ising(sols).energy.max_abs_odd(),
                              extract_dispersive(sols, line).frequency.max_abs_odd());
  o.require(odd * 1e3 > 1e-6, "perturbed flux leaves odd terms null");
  o.detail << "max odd at Kramers points " << fmt(worst * 1e3) << " MHz; with one flux at 0.1 rad " << fmt(odd * 1e3)
           << " MHz";
}

void kramers_degeneracy(Outcome& o) {
  ChainCircuit c = uniform_circuit(5.0);
  double worst = 0.0;
  for (double flux : {0.0, units::kPi}) {
    c.external_flux_rad.assign(3, flux);
    const auto sols = solve_all_configs(c);
    for (std::uint32_t b = 0; b < 8; ++b) worst = std::max(worst, std::abs(sols[b].energy_ghz - sols[7 - b].energy_ghz));
  }
  o.require(worst < 1e-9, "Kramers partners split");
  o.detail << "max |E(s) - E(-s)| = " << fmt(worst) << " GHz";
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> e0(0.2, 0.6), es(0.05, 0.5), l(1.0, 10.0), f(-3.0, 3.0), x(-1.0, 1.0);
  double de = 0.0, del = 0.0, dg = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<JunctionParams> js;
    for (int i = 0; i < 3; ++i) js.push_back({e0(rng), es(rng)});
    ChainCircuit c = ChainCircuit::uniform(js, 1.0, 1.0);
    for (double& v : c.vertical_nh) v = l(rng);
    for (double& v : c.coupling_nh) v = l(rng);
    for (double& v : c.external_flux_rad) v = f(rng);
    for (std::uint32_t b = 0; b < 8; ++b) {
      const SpinConfig cfg(3, b);
      const EquilibriumSolution s = solve_equilibrium(c, cfg);
      de = std::max(de, std::abs(s.energy_ghz - oracle::grid_minimize(c, cfg.spins()).energy));
      const double h = 1e-3, p = s.phases_star.phi_in;
      const double fd = (solve_equilibrium(c, cfg, InputPhaseMode::fixed(p + h)).energy_ghz - 2 * s.energy_ghz +
                         solve_equilibrium(c, cfg, InputPhaseMode::fixed(p - h)).energy_ghz) /
                        (h * h);
      del = std::max(del, std::abs(s.inductive_energy_ghz / fd - 1.0));
      Eigen::VectorXd pt(5);
      for (auto& v : pt) v = x(rng);
      const Eigen::VectorXd g = gradient(c, pt, cfg);
      const double step = 1e-5;
      for (int k = 0; k < 5; ++k) {
        Eigen::VectorXd a = pt, m = pt;
        a[k] += step;
        m[k] -= step;
        const double cd = (oracle::energy(c, a, cfg.spins()) - oracle::energy(c, m, cfg.spins())) / (2 * step);
        dg = std::max(dg, std::abs(g[k] - cd) / std::max(1.0, std::abs(cd)));
      }
    }
  }
  o.require(de < 1e-6, "energy vs grid minimum");
  o.require(del < 1e-6, "Schur E_L vs second difference");
  o.require(dg < 1e-6, "gradient vs central difference");
  o.detail << "energy " << fmt(de) << " GHz, E_L rel " << fmt(del) << ", gradient rel " << fmt(dg);
}

void magnitudes(Outcome& o) {
  ScanRequest req;
  for (int k = 1; k <= 10; ++k) {
    req.vertical_nh.push_back(k);
    req.coupling_nh.push_back(k);
  }
  const auto pts = scan_2d(reference_circuit(), TransmissionLine{}, req, {}, 1);
  int calibrated_points = 0, matching = 0;
  double best_a = 0.0;
  for (const ScanPoint& p : pts) {
    if (p.edsr) best_a = std::max(best_a, p.edsr->max_abs_off_diagonal());
    if (!p.error.empty() || !p.ising || !p.dispersive) continue;
    ++calibrated_points;
    auto mhz_decade = [](double v) { return std::abs(v) * 1e3 >= 1.0 && std::abs(v) * 1e3 < 10.0; };
    auto chi_window = [](double v) { return std::abs(v) * 1e3 >= 0.1 && std::abs(v) * 1e3 <= 1.0; };
    if (mhz_decade(p.ising->j(0, 1)) && mhz_decade(p.ising->j(1, 2)) && chi_window(p.dispersive->chi(0, 1)) &&
        chi_window(p.dispersive->chi(1, 2))) {
      ++matching;
    }
  }
  // 9 GHz is out of reach at 5 nH inside the nominal length window, so the
  // ratio check at that point calibrates over the wider line-length range.
  const auto sols = solve_all_configs(uniform_circuit(5.0));
  const IsingModel ising = extract_ising(sols);
  const DispersiveModel disp = extract_dispersive(sols, calibrated(sols, kWideBracket));
  const double rj = std::abs(ising.j(0, 2) / ising.j(0, 1));
  const double rc = std::abs(disp.chi(0, 2) / disp.chi(0, 1));
  o.require(matching > 0, "no grid point with J in the MHz decade and chi in [0.1, 1] MHz");
  o.require(rj < 0.5, "|J13/J12| at 5/5 nH");
  o.require(rc < 0.5, "|chi13/chi12| at 5/5 nH");
  o.require(best_a >= 0.01, "off-diagonal A below 0.01 everywhere");
  o.detail << matching << " of " << calibrated_points << " calibrated points match (" << pts.size()
           << " scanned); |J13/J12| = " << fmt(rj) << ", |chi13/chi12| = " << fmt(rc) << "; max |A_jk| = "
           << fmt(best_a);
}

void resonator(Outcome& o) {
  TransmissionLine line;
  const double qw = std::abs(resonance_frequency(std::numeric_limits<double>::infinity(), line) / line.quarter_wave_ghz() - 1.0);
  const auto sols = solve_all_configs(reference_circuit());
  const TransmissionLine cal = calibrated(sols, LengthBracket{});
  const double closure = std::abs(readout_table(sols, cal).reference_frequency_ghz - 9.0);
  bool monotone = true;
  double prev = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double f = resonance_frequency(std::pow(10.0, -1.0 + 4.0 * k / 49.0), line);
    monotone = monotone && f > prev;
    prev = f;
  }
  o.require(qw < 1e-9, "quarter-wave limit");
  o.require(closure < 1e-9, "calibration closure");
  o.require(monotone, "monotone in E_L");
  o.detail << "quarter-wave rel " << fmt(qw) << ", closure " << fmt(closure * 1e9) << " Hz, monotone on 50 points";
}

struct SpinModel {
  Eigen::MatrixXd j;
  Eigen::MatrixXd a;
};

SpinModel reference_model() {
  const auto sols = solve_all_configs(reference_circuit());
  return {ising_matrix(extract_ising(sols)), extract_edsr_weights(sols).a};
}

void dynamics(Outcome& o, const SpinModel& m) {
  const SpinHamiltonian h = static_hamiltonian(m.j);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ua(-0.05, 0.05), uf(0.0, 0.05), up(0.0, units::kTwoPi);
  const CMatrix x = global_flip(3);
  double comm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = ua(rng);
    std::vector<DriveChannel> ch;
    for (int s = 0; s < 3; ++s) ch.push_back(make_channel(3, s, a, {{uf(rng), up(rng), 1.0}, {uf(rng), up(rng), 0.5}}));
    PulseSchedule sched = PulseSchedule::empty(1.0, 1, ch);
    for (auto& e : sched.envelope_ghz) e[0] = ua(rng);
    comm = std::max(comm, frobenius_norm(commutator(x, step_hamiltonian(h, sched, 0))));
  }
  PropagateOptions po;
  po.keep_states = false;
  const Trajectory t = propagate(h, krotov_guess(m.j, m.a, 5000.0, 5000, 0.02), basis_state(3, 0), po);
  const double drift = std::abs(norm(t.final_state) - 1.0);

  const TransitionSpectrum spec = transition_spectrum(m.j);
  const double rabi = spec.gap_ghz / 50.0;
  const double element = std::abs(m.a(0, 1) + m.a(0, 2));
  const double f = spec.line(0, true).frequency_ghz;
  const double dt = 1.0 / (40.0 * f);
  const int steps = static_cast<int>(std::ceil(1.6 / (2.0 * rabi) / dt));
  PulseSchedule s = PulseSchedule::empty(steps * dt, steps, {make_channel(3, 0, m.a, {{f, 0.0, 1.0}})});
  for (double& v : s.envelope_ghz[0]) v = rabi / element;
  po.keep_states = true;
  po.sample_every = 1;
  const Trajectory r = propagate(h, s, basis_state(3, 0), po);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < r.states.size(); ++k) {
    if (std::norm(r.states[k][1]) > std::norm(r.states[peak][1])) peak = k;
  }
  const double rate_err = std::abs(1.0 / (2.0 * r.t_ns[peak]) / rabi - 1.0);
  o.require(comm < 1e-12, "[X, H(t)]");
  o.require(drift < 1e-9, "norm drift");
  o.require(rate_err < 0.02, "Rabi rate");
  o.detail << "max ||[X,H]|| " << fmt(comm) << ", norm drift " << fmt(drift) << ", Rabi rate error " << fmt(100 * rate_err)
           << "%";
}

void sequences(Outcome& o, const SpinModel& m) {
  const SpinHamiltonian h = static_hamiltonian(m.j);
  const TransitionSpectrum spec = transition_spectrum(m.j);
  const Sequence seq = three_pi_sequence(m.j, m.a, spec.gap_ghz / 100.0);
  const CMatrix u = schedule_propagator(h, seq.schedule);
  const double f = gate_fidelity(u, GateObjective{units::kPi});
  const LogicalFrame frame = LogicalFrame::build(h);
  double w = 1.0;
  for (const StateVector& psi : {frame.up(), frame.down(), frame.plus()}) w = std::min(w, logical_decompose(u * psi, frame).w);
  o.require(f > 0.99, "fidelity");
  o.require(w > 0.99, "logical weight");
  o.detail << "R_X(pi) fidelity " << fmt(f) << ", min final W " << fmt(w) << " over " << seq.schedule.num_steps
           << " lab-frame steps";
}

void krotov(Outcome& o, const SpinModel& m) {
  const SpinHamiltonian h = static_hamiltonian(m.j);
  const LogicalFrame frame = LogicalFrame::build(h);
  for (double theta : {units::kPi, units::kPi / 2, units::kPi / 4}) {
    KrotovOptions ko;
    ko.iterations = 500;
    ko.monotonic_tolerance = std::numeric_limits<double>::infinity();  // checked below
    const KrotovResult r = krotov_optimize(h, GateObjective{theta}, krotov_guess(m.j, m.a, 5000.0, 5000), ko);
    double worst_drop = 0.0;
    for (std::size_t k = 1; k < r.fidelity.size(); ++k) worst_drop = std::max(worst_drop, r.fidelity[k - 1] - r.fidelity[k]);
    PropagateOptions po;
    po.sample_every = 1;
    const Trajectory t = propagate(h, r.schedule, frame.up(), po);
    std::vector<double> raw;
    for (const StateVector& psi : t.states) raw.push_back(logical_decompose(psi, frame).theta());
    const double end = unwrap(raw).back();
    const double miss = std::abs(std::remainder(end - theta, units::kTwoPi));
    const double infid = 1.0 - r.fidelity.back();
    o.require(r.iterations == 500, "iteration count");
    o.require(worst_drop <= 1e-10, "monotone trace");
    o.require(infid < 1e-3, "final infidelity");
    o.require(miss < 1e-2, "theta endpoint");
    o.detail << " theta=" << fmt(theta) << ": 1-F " << fmt(infid) << ", max drop " << fmt(worst_drop) << ", theta(T) "
             << fmt(end) << " (miss " << fmt(miss) << ");";
  }
}

void rz_rzz(Outcome& o, const SpinModel& m) {
  const ChainCircuit c = reference_circuit();
  const double phi = 0.08, tau = 7.5;
  ChainCircuit held = c;
  held.external_flux_rad[0] = phi;
  const double split = solve_equilibrium(held, SpinConfig(3, 0)).energy_ghz - solve_equilibrium(held, SpinConfig(3, 7)).energy_ghz;
  const double rz_err = std::abs(rz_phase(c, FluxTrajectory::square(0, phi, tau)).theta_rad - units::kTwoPi * split * tau);
  const double jc = 3e-4;
  const double rzz_err = std::abs(rzz_phase({0.0, 50.0}, {jc, jc}).theta_rad - 2.0 * units::kTwoPi * jc * 50.0);
  const double j_inter = std::abs(m.j(1, 2)) / 10.0;
  const std::vector<double> t = {0.0, 200.0, 1800.0, 2000.0}, jt = {0.0, j_inter, j_inter, 0.0};
  const double area = rzz_phase(t, jt).theta_rad;
  const double two_module = oracle::two_module_zz_phase(m.j, t, jt, 20000);
  o.require(rz_err < 1e-6, "R_Z closed form");
  o.require(rzz_err < 1e-6, "R_ZZ closed form");
  o.require(std::abs(area - two_module) < 1e-3, "64-state oracle");
  o.detail << "R_Z " << fmt(rz_err) << " rad, R_ZZ " << fmt(rzz_err) << " rad, 64-state vs area " << fmt(std::abs(area - two_module))
           << " rad at J_inter = J23/10 (theta " << fmt(area) << ")";
}

void qec(Outcome& o, const SpinModel& m) {
  const auto sols = solve_all_configs(reference_circuit());
  const ReadoutTable table = readout_table(sols, calibrated(sols, LengthBracket{}));
  const SyndromeModel model = SyndromeModel::build(table);
  int correct = 0;
  for (std::uint32_t b = 0; b < 8; ++b) {
    if (classify_syndrome(table.frequency_ghz[b], model) == Syndrome::of(SpinConfig(3, b))) ++correct;
  }
  const CorrectionPulses pulses = build_correction_pulses(m.j, m.a);
  std::mt19937_64 rng(77);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double dw = 0.0, df = 0.0;
  int cycles = 0;
  for (int k = 0; k < 20; ++k) {
    const double th = std::acos(1.0 - 2.0 * draw()), ph = units::kTwoPi * draw();
    for (int e = 0; e < 3; ++e) {
      const CycleResult r = run_cycle(std::cos(th / 2), std::polar(std::sin(th / 2), ph), e, model, pulses);
      dw = std::max(dw, std::abs(1.0 - r.report.final_w));
      df = std::max(df, std::abs(1.0 - r.report.fidelity));
      ++cycles;
    }
  }
  o.require(correct == 8, "syndrome classification");
  o.require(dw < 1e-6, "logical weight");
  o.require(df < 1e-6, "overlap up to Pauli frame");
  o.detail << correct << "/8 configs classified (min class gap " << fmt(model.min_separation_ghz * 1e3) << " MHz); " << cycles
           << " cycles, max |1-W| " << fmt(dw) << ", max |1-F| " << fmt(df);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void determinism(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / ("isene_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const nlohmann::json circuit = nlohmann::json::parse(R"({
    "junctions": [{"E0_GHz": 0.4, "Esigma_GHz": 0.4}, {"E0_GHz": 0.4, "Esigma_GHz": 0.3}, {"E0_GHz": 0.4, "Esigma_GHz": 0.2}],
    "L_vertical_nH": 2.0,
    "L_coupling_nH": 10.0
  })");
  const std::vector<nlohmann::json> configs = nlohmann::json::parse(R"([
    {"task": "solve"},
    {"task": "extract"},
    {"task": "scan", "scan": {"L_vertical_nH": [1.0, 2.0], "L_coupling_nH": [5.0, 10.0]}},
    {"task": "spectrum", "spectrum": {"flux_loop": 2, "flux_grid_rad": {"start": -1.0, "stop": 1.0, "count": 9}}},
    {"task": "dynamics", "dynamics": {"rabi_over_gap": 0.01, "max_samples": 200}},
    {"task": "optimize", "optimize": {"iterations": 3}},
    {"task": "gates", "gates": {"rz": {"flux_loop": 1, "t_ns": [0.0, 1.0, 4.0, 5.0], "phi_rad": [0.0, 0.1, 0.1, 0.0]},
                                "rzz": {"t_ns": [0.0, 10.0], "J_inter_GHz": [1e-5, 1e-5]}}},
    {"task": "qec", "qec": {"random_states": 2}},
    {"task": "check", "line": {"length_mm": 1.0}}
  ])").get<std::vector<nlohmann::json>>();

  int files = 0, differing = 0, failed_runs = 0;
  for (nlohmann::json cfg : configs) {
    cfg["circuit"] = circuit;
    const std::string task = cfg["task"];
    const fs::path path = root / (task + ".json");
    std::ofstream(path) << cfg.dump();
    std::vector<fs::path> outs;
    for (int rep = 0; rep < 2; ++rep) {
      outs.push_back(root / (task + "_" + std::to_string(rep)));
      const std::string cmd = std::string(ISENE_CLI) + " " + task + " -c " + path.string() + " -o " + outs.back().string() +
                              " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ++failed_runs;
    }
    for (const auto& entry : fs::directory_iterator(outs[0])) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      if (slurp(entry.path()) != slurp(outs[1] / entry.path().filename())) {
        ++differing;
        o.detail << " differs: " << task << "/" << entry.path().filename().string();
      }
    }
  }
  fs::remove_all(root);
  o.require(failed_runs == 0, "a task run failed");
  o.require(differing == 0 && files > 0, "CSV bytes differ");
  o.detail << configs.size() << " tasks run twice, " << files << " CSV files compared, " << differing << " differ";
}

}  // namespace

int main() {
  const SpinModel model = reference_model();
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Kramers nulls", kramers_nulls},
      {"Kramers degeneracy", kramers_degeneracy},
      {"Oracle equivalence", oracle_equivalence},
      {"Magnitude replication", magnitudes},
      {"Resonator", resonator},
      {"Dynamics", [&](Outcome& o) { dynamics(o, model); }},
      {"Gate sequences", [&](Outcome& o) { sequences(o, model); }},
      {"Krotov replication", [&](Outcome& o) { krotov(o, model); }},
      {"R_Z / R_ZZ", [&](Outcome& o) { rz_rzz(o, model); }},
      {"QEC cycle", [&](Outcome& o) { qec(o, model); }},
      {"Determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
