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

#include <vector>

#include "isene/circuit.hpp"
#include "isene/equilibrium.hpp"

namespace isene {

/// Transmission-line segment terminated by the chain. SI units.
struct TransmissionLine {
  double z_c_ohm = 50.0;
  double v_eff_m_per_s = 0.39 * 299792458.0;
  double length_m = 3.25e-3;
  /// Load impedance Z_L = i * factor * omega * phi0^2 / E_L. The reference
  /// model uses factor 2.
  double impedance_factor = 2.0;

  void validate() const;
  double quarter_wave_ghz() const;
};

/// Smallest positive root of cot(omega l / v) = factor * omega phi0^2 / (E_L Z_c).
/// E_L may be +inf (bare quarter-wave line). Result in GHz (omega / 2 pi).
double resonance_frequency(double inductive_energy_ghz, const TransmissionLine& line);

/// |cot(x) - alpha x| at the root for the given frequency; used by tests.
double resonance_residual(double frequency_ghz, double inductive_energy_ghz,
                          const TransmissionLine& line);

struct ReadoutTable {
  std::vector<double> inductive_energy_ghz;  // per config index
  std::vector<double> frequency_ghz;         // per config index
  double reference_frequency_ghz = 0.0;      // Walsh constant term (mean)
};

ReadoutTable readout_table(const ChainCircuit& circuit, const TransmissionLine& line,
                           const SolverOptions& options = {}, int threads = 1);

/// Same, reusing already-solved equilibria.
ReadoutTable readout_table(const std::vector<EquilibriumSolution>& solutions,
                           const TransmissionLine& line);

struct LengthBracket {
  double min_m = 0.1e-3;
  double max_m = 3.3e-3;
};

struct Calibration {
  double length_m = 0.0;
  double reference_frequency_ghz = 0.0;
  int iterations = 0;
};

/// Bisection over l so that the mean resonance frequency over all configs
/// equals target_f0_ghz to within 1 Hz. Throws TargetUnreachable.
Calibration calibrate_length(const ChainCircuit& circuit, const TransmissionLine& line,
                             double target_f0_ghz, LengthBracket bracket = {},
                             const SolverOptions& options = {}, int threads = 1);

Calibration calibrate_length(const std::vector<EquilibriumSolution>& solutions,
                             const TransmissionLine& line, double target_f0_ghz,
                             LengthBracket bracket = {});

}  // namespace isene
