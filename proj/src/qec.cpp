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

#include "isene/qec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/pulses.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

constexpr double kSingleSyndromeTolerance = 1e-9;

}  // namespace

int Syndrome::index() const {
  if (s12 > 0 && s23 > 0) return 0;
  if (s12 < 0 && s23 > 0) return 1;
  if (s12 < 0 && s23 < 0) return 2;
  return 3;
}

Syndrome Syndrome::from_index(int i) {
  switch (i) {
    case 0: return {1, 1};
    case 1: return {-1, 1};
    case 2: return {-1, -1};
    case 3: return {1, -1};
    default: throw InvalidArgument("syndrome index out of range");
  }
}

int Syndrome::correction_spin() const { return index() - 1; }

std::string Syndrome::label() const {
  return std::string("(") + (s12 > 0 ? "+" : "-") + "," + (s23 > 0 ? "+" : "-") + ")";
}

SyndromeModel SyndromeModel::build(const ReadoutTable& table, double kappa_ghz) {
  if (table.frequency_ghz.size() != 8) throw DimensionMismatch("syndrome model needs the 8 configs of N = 3");
  if (!(kappa_ghz > 0.0)) throw InvalidArgument("kappa must be positive");
  SyndromeModel m;
  m.kappa_ghz = kappa_ghz;
  std::array<int, 4> filled{};
  for (std::uint32_t b = 0; b < 8; ++b) {
    const int i = Syndrome::of(SpinConfig(3, b)).index();
    m.class_configs[i][filled[i]++] = b;
  }
  for (int i = 0; i < 4; ++i) {
    const auto [c, d] = m.class_configs[i];
    m.class_frequency_ghz[i] = 0.5 * (table.frequency_ghz[c] + table.frequency_ghz[d]);
  }
  m.min_separation_ghz = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) {
      const double sep = std::abs(m.class_frequency_ghz[i] - m.class_frequency_ghz[k]);
      m.min_separation_ghz = std::min(m.min_separation_ghz, sep);
      if (sep <= kappa_ghz) {
        std::ostringstream msg;
        msg << "syndrome classes " << Syndrome::from_index(i).label() << " and "
            << Syndrome::from_index(k).label() << " are " << sep * 1e3 << " MHz apart, within kappa "
            << kappa_ghz * 1e3 << " MHz";
        throw AmbiguousFrequency(msg.str());
      }
    }
  }
  return m;
}

Syndrome classify_syndrome(double measured_ghz, const SyndromeModel& model) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const double d = std::abs(measured_ghz - model.class_frequency_ghz[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (!(best_d <= 0.5 * model.kappa_ghz)) {
    std::ostringstream msg;
    msg << "measured " << measured_ghz << " GHz is " << best_d * 1e3 << " MHz from the nearest class";
    throw AmbiguousFrequency(msg.str());
  }
  return Syndrome::from_index(best);
}

CorrectionPulses build_correction_pulses(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a,
                                         const CorrectionOptions& options) {
  if (j.rows() != 3 || a.rows() != 3) throw DimensionMismatch("correction pulses are defined for N = 3");
  if (!(options.duration_gaps > 0.0)) throw InvalidArgument("duration_gaps must be positive");
  CorrectionPulses out;
  out.h = static_hamiltonian(j);
  const TransitionSpectrum spec = transition_spectrum(j);
  for (int spin = 0; spin < 3; ++spin) {
    const double f = spec.line(spin, true).frequency_ghz;
    const double spacing = std::abs(f - spec.line(spin, false).frequency_ghz);
    if (!(f > 0.0) || !(spacing > 0.0)) {
      throw UnresolvableTransitions("spin " + std::to_string(spin + 1) + " lines are not resolved");
    }
    DriveChannel ch = make_channel(3, spin, a, {Carrier{f, 0.0, 1.0}}, options.include_self_term);
    const double f_max = std::max(out.h.bandwidth_ghz(), f);
    const double dt_target = options.dt_ns > 0.0 ? options.dt_ns : 1.0 / (40.0 * f_max);
    const double duration = options.duration_gaps / spec.gap_ghz;
    const int steps = static_cast<int>(std::ceil(duration / dt_target));
    PulseSchedule s = PulseSchedule::empty(duration, steps, {ch});
    const double dt = s.dt_ns();

    // Full Blackman window; pi area on the aligned transition.
    double area = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double x = units::kTwoPi * (i + 0.5) / steps;
      s.envelope_ghz[0][i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
      area += s.envelope_ghz[0][i] * dt;
    }
    const std::uint32_t from = 1u << spin;  // one flip away from |uuu>
    const double m = std::abs(s.channels[0].op(0, static_cast<int>(from)));
    if (m == 0.0) throw UnresolvableTransitions("correction transition has no matrix element");
    const double x = units::kPi * f * dt;
    const double amp = units::kPi / (units::kTwoPi * m * (std::sin(x) / x) * area);
    for (double& v : s.envelope_ghz[0]) v *= amp;
    s.max_amplitude_ghz = std::max(1.0, 2.0 * amp);
    out.unitaries[spin] = schedule_propagator(out.h, s);
    out.schedules[spin] = std::move(s);
  }
  return out;
}

StateVector inject_error(const StateVector& psi, int spin) {
  if (psi.size() != 8) throw DimensionMismatch("inject_error expects a three-spin state");
  if (spin < 0 || spin > 2) throw InvalidArgument("error spin out of range");
  StateVector out(8);
  for (int b = 0; b < 8; ++b) out[b ^ (1 << spin)] = psi[b];
  return out;
}

CycleResult correct_cycle(const StateVector& psi, const SyndromeModel& model, const CorrectionPulses& pulses,
                          const StateVector& reference) {
  if (psi.size() != 8 || reference.size() != 8) throw DimensionMismatch("correct_cycle expects three-spin states");
  const double total = norm(psi);
  if (!(total > 0.0)) throw InvalidArgument("correct_cycle: zero state");

  std::array<double, 4> weight{};
  for (int i = 0; i < 4; ++i) {
    for (std::uint32_t c : model.class_configs[i]) weight[i] += std::norm(psi[c]);
    weight[i] /= total * total;
  }
  const int measured = static_cast<int>(std::max_element(weight.begin(), weight.end()) - weight.begin());
  if (weight[measured] < 1.0 - kSingleSyndromeTolerance) {
    std::ostringstream msg;
    msg << "state is spread over syndromes; largest weight " << weight[measured];
    throw UncorrectableState(msg.str());
  }

  CycleResult r;
  r.report.measured_frequency_ghz = model.class_frequency_ghz[measured];
  r.report.measured_syndrome = classify_syndrome(r.report.measured_frequency_ghz, model);

  StateVector projected(8);
  for (std::uint32_t c : model.class_configs[measured]) projected[c] = psi[c];
  const double pn = norm(projected);
  for (cplx& x : projected) x /= pn;

  r.report.correction_spin = r.report.measured_syndrome.correction_spin();
  r.state = r.report.correction_spin < 0 ? projected : pulses.unitaries[r.report.correction_spin] * projected;

  const LogicalFrame frame{3, true};
  r.report.final_w = std::norm(r.state[frame.up_index()]) + std::norm(r.state[frame.down_index()]);

  StateVector z_ref = reference;
  z_ref[frame.down_index()] = -z_ref[frame.down_index()];
  const double f_i = std::norm(inner(reference, r.state));
  const double f_z = std::norm(inner(z_ref, r.state));
  r.report.pauli_frame = f_z > f_i ? "Z" : "I";
  r.report.fidelity = std::max(f_i, f_z) / std::max(norm(reference) * norm(reference), 1e-300);
  return r;
}

CycleResult run_cycle(cplx alpha, cplx beta, int error_spin, const SyndromeModel& model,
                      const CorrectionPulses& pulses) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0)) throw InvalidArgument("run_cycle: zero logical state");
  StateVector ref(8);
  ref[0] = alpha / n;
  ref[7] = beta / n;
  const StateVector start = error_spin < 0 ? ref : inject_error(ref, error_spin);
  CycleResult r = correct_cycle(start, model, pulses, ref);
  r.report.injected_error = error_spin;
  return r;
}

}  // namespace isene
