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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isene/resonator.hpp"
#include "isene/spin_dynamics.hpp"

namespace isene {

/// Default classification window: a readout linewidth of 0.1 MHz.
inline constexpr double kDefaultKappaGhz = 1e-4;

/// Stabilizer signs (s12, s23) = (sigma1 sigma2, sigma2 sigma3).
struct Syndrome {
  int s12 = 1;
  int s23 = 1;

  static Syndrome of(const SpinConfig& c) { return {c.sigma(0) * c.sigma(1), c.sigma(1) * c.sigma(2)}; }
  /// 0: (+,+), 1: (-,+), 2: (-,-), 3: (+,-).
  int index() const;
  static Syndrome from_index(int i);
  /// Zero-based spin to flip back, -1 for (+,+).
  int correction_spin() const;
  std::string label() const;
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Four syndrome classes of the three-spin module and their resonator
/// frequencies. Each class is a Kramers pair {c, -c}.
struct SyndromeModel {
  std::array<double, 4> class_frequency_ghz{};
  std::array<std::array<std::uint32_t, 2>, 4> class_configs{};
  double kappa_ghz = kDefaultKappaGhz;
  /// Smallest pairwise class separation.
  double min_separation_ghz = 0.0;

  /// Throws AmbiguousFrequency if two classes sit within kappa.
  static SyndromeModel build(const ReadoutTable& table, double kappa_ghz = kDefaultKappaGhz);
};

/// Nearest class within kappa / 2; throws AmbiguousFrequency otherwise.
Syndrome classify_syndrome(double measured_ghz, const SyndromeModel& model);

/// Conditional pi pulses that undo a flip of each spin. A single flip of
/// |up up up> or |down down down> leaves the flipped spin with its neighbours
/// aligned, so one tone at the aligned line of that spin is enough.
struct CorrectionPulses {
  SpinHamiltonian h;
  std::array<PulseSchedule, 3> schedules;
  std::array<CMatrix, 3> unitaries;
};

struct CorrectionOptions {
  /// Pulse length in units of 1 / (spectral gap). Long, smooth pulses keep
  /// both the neighbouring line and the counter-rotating term negligible.
  double duration_gaps = 40.0;
  /// 0 picks 1 / (40 f_max).
  double dt_ns = 0.0;
  bool include_self_term = false;
};

CorrectionPulses build_correction_pulses(const Eigen::MatrixXd& j, const Eigen::MatrixXd& a,
                                         const CorrectionOptions& options = {});

struct CycleReport {
  int injected_error = -1;  // zero-based spin, -1 for none; filled by run_cycle
  Syndrome measured_syndrome;
  double measured_frequency_ghz = 0.0;
  int correction_spin = -1;
  double final_w = 0.0;
  /// "I" or "Z": logical Pauli left in software after the physical pulse.
  std::string pauli_frame = "I";
  /// |<frame * reference | final>|^2 when a reference logical state is known.
  double fidelity = 0.0;
};

struct CycleResult {
  StateVector state;
  CycleReport report;
};

/// Applies sigma_x on `spin`.
StateVector inject_error(const StateVector& psi, int spin);

/// Measure (s12, s23) through the readout model, project, apply the
/// correction pulse and pick the Pauli frame that best matches `reference`.
/// Throws UncorrectableState when the state is spread over several syndromes.
CycleResult correct_cycle(const StateVector& psi, const SyndromeModel& model, const CorrectionPulses& pulses,
                          const StateVector& reference);

/// inject_error (unless error_spin < 0) followed by correct_cycle on
/// alpha |up up up> + beta |down down down>.
CycleResult run_cycle(cplx alpha, cplx beta, int error_spin, const SyndromeModel& model,
                      const CorrectionPulses& pulses);

}  // namespace isene
