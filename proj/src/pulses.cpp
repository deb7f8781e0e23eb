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

#include "isene/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

using units::kPi;
using units::kTwoPi;

constexpr std::uint32_t kUUU = 0;  // uuu
constexpr std::uint32_t kDUU = 1;  // duu
constexpr std::uint32_t kUDU = 2;  // udu
constexpr std::uint32_t kDUD = 5;  // dud
constexpr std::uint32_t kDDD = 7;  // ddd

struct Leg {
  std::string label;
  int spin;
  std::uint32_t from;
  std::uint32_t to;
  double area;
  double phase;  // carrier phase the leg wants
};

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

bool others_aligned(std::uint32_t config, int spin) {
  const SpinConfig c(3, config);
  const int k = (spin + 1) % 3;
  const int l = (spin + 2) % 3;
  return c.sigma(k) == c.sigma(l);
}

void check_inputs(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double rabi_rate_ghz) {
  if (j.rows() != 3 || j.cols() != 3 || a.rows() != 3 || a.cols() != 3) {
    throw DimensionMismatch("sequences are defined for N = 3");
  }
  if (!(rabi_rate_ghz > 0.0)) throw InvalidArgument("rabi rate must be positive");
}

Sequence assemble(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, const std::vector<Leg>& legs,
                  double rabi_rate_ghz, const SequenceOptions& options) {
  Sequence seq;
  seq.spectrum = transition_spectrum(j);
  if (seq.spectrum.gap_ghz < options.resolvability * rabi_rate_ghz) {
    std::ostringstream msg;
    msg << "spectral gap " << seq.spectrum.gap_ghz * 1e3 << " MHz is below " << options.resolvability
        << " x rabi rate " << rabi_rate_ghz * 1e3 << " MHz";
    throw UnresolvableTransitions(msg.str());
  }
  const SpinHamiltonian h0 = static_hamiltonian(j);

  // One channel per spin, carrying the line (and phase) of its first leg.
  std::vector<DriveChannel> channels;
  std::vector<int> channel_of(3, -1);
  for (const Leg& leg : legs) {
    if (channel_of[leg.spin] >= 0) continue;
    const double f = seq.spectrum.line(leg.spin, others_aligned(leg.from, leg.spin)).frequency_ghz;
    channel_of[leg.spin] = static_cast<int>(channels.size());
    channels.push_back(make_channel(3, leg.spin, a, {Carrier{f, leg.phase, 1.0}}, options.include_self_term));
  }
  double f_max = h0.bandwidth_ghz();
  for (const DriveChannel& c : channels) f_max = std::max(f_max, c.max_frequency_ghz());
  const double dt = options.dt_ns > 0.0 ? options.dt_ns : 1.0 / (40.0 * f_max);

  int step = 0;
  for (const Leg& leg : legs) {
    const DriveChannel& ch = channels[channel_of[leg.spin]];
    const Carrier& carrier = ch.carriers.front();
    const cplx m = ch.op(static_cast<int>(leg.to), static_cast<int>(leg.from));
    if (std::abs(m) == 0.0) throw UnresolvableTransitions("leg " + leg.label + " has no matrix element");
    double sign = 1.0;
    const double dphi = std::remainder(leg.phase - carrier.phase_rad, kTwoPi);
    if (std::abs(std::abs(dphi) - kPi) < 1e-12) {
      sign = -1.0;
    } else if (std::abs(dphi) > 1e-12) {
      throw InvalidArgument("legs on one spin must share a carrier phase up to pi");
    }
    SequencePulse p;
    p.label = leg.label;
    p.spin = leg.spin;
    p.others_aligned = others_aligned(leg.from, leg.spin);
    p.from = leg.from;
    p.to = leg.to;
    p.frequency_ghz = carrier.frequency_ghz;
    p.area_rad = leg.area;
    p.carrier_phase_rad = leg.phase;
    const double duration = leg.area / (kTwoPi * rabi_rate_ghz);
    p.num_steps = std::max(1, static_cast<int>(std::ceil(duration / dt - 1e-9)));
    p.first_step = step;
    // Zero-order hold of the carrier scales the resonant component by sinc.
    p.amplitude_ghz = sign * leg.area /
                      (kTwoPi * std::abs(m) * sinc(kPi * carrier.frequency_ghz * dt) * p.num_steps * dt);
    step += p.num_steps;
    seq.pulses.push_back(p);
  }

  seq.schedule = PulseSchedule::empty(step * dt, step, std::move(channels));
  double peak = 0.0;
  for (const SequencePulse& p : seq.pulses) {
    auto& env = seq.schedule.envelope_ghz[channel_of[p.spin]];
    std::fill(env.begin() + p.first_step, env.begin() + p.first_step + p.num_steps, p.amplitude_ghz);
    peak = std::max(peak, std::abs(p.amplitude_ghz));
  }
  seq.schedule.max_amplitude_ghz = std::max(1.0, 2.0 * peak);
  return seq;
}

// Coupling phase alpha of a resonant leg in the rotating frame: the leg maps
// |from> to -i e^{i alpha} |to> (times sin of half its area).
double coupling_phase(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, int spin, std::uint32_t from,
                      std::uint32_t to, double carrier_phase, bool include_self_term) {
  const SpinHamiltonian h0 = static_hamiltonian(j);
  const CMatrix op = drive_operator(3, spin, a, include_self_term);
  const double s = h0.diagonal_ghz[to] >= h0.diagonal_ghz[from] ? 1.0 : -1.0;
  return std::arg(op(static_cast<int>(to), static_cast<int>(from))) - s * carrier_phase;
}

}  // namespace

Eigen::Matrix2cd GateObjective::target() const {
  Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
  t(0, 0) = std::polar(1.0, 0.5 * theta_rad);
  t(1, 1) = std::polar(1.0, -0.5 * theta_rad);
  return t;
}

Eigen::Matrix2cd logical_block(const CMatrix& u, int num_spins) {
  LogicalFrame frame;
  frame.num_spins = num_spins;
  const StateVector basis[2] = {frame.plus(), frame.minus()};
  Eigen::Matrix2cd m;
  for (int c = 0; c < 2; ++c) {
    const StateVector col = u * basis[c];
    for (int r = 0; r < 2; ++r) m(r, c) = inner(basis[r], col);
  }
  return m;
}

double gate_fidelity(const Eigen::Matrix2cd& logical_u, const GateObjective& objective) {
  const cplx tr = (objective.target().adjoint() * logical_u).trace();
  return std::norm(tr) / 4.0;
}

double gate_fidelity(const CMatrix& u, const GateObjective& objective) {
  return gate_fidelity(logical_block(u, objective.num_spins), objective);
}

std::vector<double> blackman_flank_shape(double duration_ns, int num_steps, double flank_fraction) {
  if (num_steps < 1 || !(duration_ns > 0.0)) throw InvalidArgument("shape: empty grid");
  if (!(flank_fraction > 0.0 && flank_fraction <= 0.5)) {
    throw InvalidArgument("shape: flank fraction must be in (0, 0.5]");
  }
  const double dt = duration_ns / num_steps;
  const double t_flank = flank_fraction * duration_ns;
  auto rise = [&](double t) {
    if (t >= t_flank) return 1.0;
    const double x = kPi * t / t_flank;
    return 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
  };
  std::vector<double> s(num_steps);
  for (int i = 0; i < num_steps; ++i) {
    const double t = (i + 0.5) * dt;
    s[i] = std::min(rise(t), rise(duration_ns - t));
  }
  return s;
}

Sequence three_pi_sequence(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double rabi_rate_ghz,
                           const SequenceOptions& options) {
  check_inputs(j, a, rabi_rate_ghz);
  const std::vector<Leg> legs = {
      {"pi spin1 uuu->duu", 0, kUUU, kDUU, kPi, 0.0},
      {"pi spin3 duu->dud", 2, kDUU, kDUD, kPi, 0.0},
      {"pi spin2 dud->ddd", 1, kDUD, kDDD, kPi, 0.0},
  };
  Sequence seq = assemble(j, a, legs, rabi_rate_ghz, options);
  seq.chain = {kUUU, kDUU, kDUD, kDDD};
  return seq;
}

Sequence sequence_arbitrary_theta(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double theta_rad,
                                  double rabi_rate_ghz, const SequenceOptions& options) {
  check_inputs(j, a, rabi_rate_ghz);
  if (!std::isfinite(theta_rad)) throw InvalidArgument("theta must be finite");
  const bool self = options.include_self_term;
  // + sector: L -> E1 (spin 1), E1 -> E2 (spin 3, element <dud|O3|duu>),
  // L <-> E2 (spin 2, element <udu|O2|uuu>). With alpha3 = alpha1 + alpha2
  // the + sector picks up e^{i theta/2}; the - sector sees every coupling
  // negated and picks up e^{-i theta/2}.
  const double alpha1 = coupling_phase(j, a, 0, kUUU, kDUU, 0.0, self);
  const double alpha2 = coupling_phase(j, a, 2, kDUU, kDUD, 0.0, self);
  const double area = std::abs(theta_rad);
  const double alpha3 = alpha1 + alpha2 + (theta_rad < 0.0 ? kPi : 0.0);
  const SpinHamiltonian h0 = static_hamiltonian(j);
  const double s3 = h0.diagonal_ghz[kUDU] >= h0.diagonal_ghz[kUUU] ? 1.0 : -1.0;
  const double m3_arg = std::arg(drive_operator(3, 1, a, self)(kUDU, kUUU));
  const double phi3 = std::remainder(s3 * (m3_arg - alpha3), kTwoPi);
  std::vector<Leg> legs = {
      {"pi/2 spin1 uuu->duu", 0, kUUU, kDUU, 0.5 * kPi, 0.0},
      {"pi spin3 duu->dud", 2, kDUU, kDUD, kPi, 0.0},
      {"theta spin2 uuu->udu", 1, kUUU, kUDU, area, phi3},
      {"pi spin3 dud->duu", 2, kDUU, kDUD, kPi, kPi},
      {"pi/2 spin1 duu->uuu", 0, kUUU, kDUU, 0.5 * kPi, kPi},
  };
  if (area == 0.0) legs.erase(legs.begin() + 2);
  Sequence seq = assemble(j, a, legs, rabi_rate_ghz, options);
  seq.chain = {kUUU, kDUU, kDUD};
  return seq;
}

PulseSchedule krotov_guess(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double duration_ns,
                           int num_steps, double amplitude_ghz, double flank_fraction,
                           bool include_self_term) {
  if (j.rows() != 3 || a.rows() != 3) throw DimensionMismatch("guess is defined for N = 3");
  const TransitionSpectrum spec = transition_spectrum(j);
  std::vector<DriveChannel> channels;
  for (int spin = 0; spin < 3; ++spin) {
    channels.push_back(make_channel(3, spin, a,
                                    {Carrier{spec.line(spin, true).frequency_ghz, 0.0, 1.0},
                                     Carrier{spec.line(spin, false).frequency_ghz, 0.0, 1.0}},
                                    include_self_term));
  }
  PulseSchedule s = PulseSchedule::empty(duration_ns, num_steps, std::move(channels));
  s.shape = blackman_flank_shape(duration_ns, num_steps, flank_fraction);
  for (auto& env : s.envelope_ghz) {
    for (int i = 0; i < num_steps; ++i) env[i] = amplitude_ghz * s.shape[i];
  }
  return s;
}

}  // namespace isene
