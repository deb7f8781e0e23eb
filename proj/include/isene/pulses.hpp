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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isene/spin_dynamics.hpp"

namespace isene {

/// Logical rotation about X. The target is diag(e^{i theta/2}, e^{-i theta/2})
/// in the (|+>, |->) basis, so the relative phase phi_+ - phi_- of an evolved
/// |0> ends at +theta.
struct GateObjective {
  double theta_rad = 0.0;
  int num_spins = 3;

  Eigen::Matrix2cd target() const;
};

/// <a|U|b> for a, b in {|+>, |->}.
Eigen::Matrix2cd logical_block(const CMatrix& u, int num_spins);

/// F = |tr(U_target^dagger P U P)|^2 / 4 on the logical subspace.
double gate_fidelity(const Eigen::Matrix2cd& logical_u, const GateObjective& objective);
double gate_fidelity(const CMatrix& u, const GateObjective& objective);

/// Shape mask at the step midpoints: Blackman half-windows over the first and
/// last `flank_fraction` of the schedule, 1 in between.
std::vector<double> blackman_flank_shape(double duration_ns, int num_steps, double flank_fraction);

/// One resonant square pulse of a sequence.
struct SequencePulse {
  std::string label;
  int spin = 0;
  bool others_aligned = true;
  std::uint32_t from = 0;  // config the pulse moves population out of
  std::uint32_t to = 0;
  double frequency_ghz = 0.0;
  double area_rad = 0.0;  // rotation angle on the driven transition
  double carrier_phase_rad = 0.0;
  double amplitude_ghz = 0.0;  // signed envelope M
  int first_step = 0;
  int num_steps = 0;
};

struct Sequence {
  PulseSchedule schedule;
  std::vector<SequencePulse> pulses;
  /// Path of |up...up> through configuration space.
  std::vector<std::uint32_t> chain;
  TransitionSpectrum spectrum;
};

struct SequenceOptions {
  /// 0 picks 1 / (40 f_max).
  double dt_ns = 0.0;
  /// Minimum gap / rabi_rate ratio.
  double resolvability = 50.0;
  bool include_self_term = false;
};

/// Three sequential pi pulses uuu -> duu -> dud -> ddd (spin 1 with the
/// others aligned, spin 3 anti-aligned, spin 2 aligned). rabi_rate is
/// M |<b|O|a>| in GHz. Throws UnresolvableTransitions.
Sequence three_pi_sequence(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double rabi_rate_ghz,
                           const SequenceOptions& options = {});

/// pi/2 and pi pulses on the first two legs, a theta pulse closing the loop
/// on spin 2, then the first two legs undone with inverted phase. The phase
/// of the theta pulse is chosen so the loop phase gives R_X(theta).
Sequence sequence_arbitrary_theta(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double theta_rad,
                                  double rabi_rate_ghz, const SequenceOptions& options = {});

/// Optimizer starting point: constant envelope times the shape mask on every
/// channel, each channel carrying both conditional lines of its spin.
PulseSchedule krotov_guess(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a, double duration_ns,
                           int num_steps, double amplitude_ghz = 1e-3, double flank_fraction = 0.05,
                           bool include_self_term = false);

}  // namespace isene
