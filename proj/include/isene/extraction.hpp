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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isene/circuit.hpp"
#include "isene/equilibrium.hpp"
#include "isene/resonator.hpp"
#include "isene/walsh.hpp"

namespace isene {

/// Odd-order coefficients at a Kramers point must stay below this (GHz).
inline constexpr double kKramersNullGhz = 1e-9;  // 1e-6 MHz
/// Summary tables print coefficients below this (GHz) as exact zeros.
inline constexpr double kSummaryZeroGhz = 1e-12;  // 1e-9 MHz

/// Walsh expansion of E_g(sigma). The pair terms are the Ising J_hk; the
/// constant J0 is kept for phase integrals but is not part of the model.
struct IsingModel {
  WalshCoefficients energy;  // GHz

  int num_spins() const { return energy.num_spins; }
  double j(int h, int k) const { return energy.pair(h, k); }
  double j0() const { return energy.constant(); }
  /// J12, J23, J13 for N = 3 (GHz).
  std::vector<double> pairwise() const;
};

/// Walsh expansion of f_r(sigma); the constant is omega_r0 / 2 pi.
struct DispersiveModel {
  WalshCoefficients frequency;  // GHz
  double length_m = 0.0;

  double f0_ghz() const { return frequency.constant(); }
  double chi(int h, int k) const { return frequency.pair(h, k); }
};

/// <phi_j>(sigma) ~ sum_k A_jk sigma_k, j = junction (row), k = spin (column).
struct EdsrWeights {
  Eigen::MatrixXd a;
  Eigen::VectorXd diagonal;
  /// max_{j, sigma} |<phi_j>(sigma) - sum_k A_jk sigma_k|, rad.
  double truncation_residual = 0.0;
  /// Largest constant or even-order coefficient of any <phi_j>, rad.
  double max_abs_even = 0.0;
  /// max_{j, sigma} |<phi_j>(sigma) + <phi_j>(-sigma)|, rad.
  double antisymmetry_residual = 0.0;

  double max_abs_off_diagonal() const;
};

struct KramersNullReport {
  bool kramers_point = false;
  double max_odd_energy_ghz = 0.0;
  double max_odd_frequency_ghz = 0.0;
  double max_degeneracy_splitting_ghz = 0.0;  // max |E(s) - E(-s)|
  double tolerance_ghz = kKramersNullGhz;

  bool passed() const {
    return max_odd_energy_ghz < tolerance_ghz && max_odd_frequency_ghz < tolerance_ghz;
  }
};

/// Throws NotKramersPoint unless the circuit sits at a Kramers point or the
/// check is explicitly overridden.
IsingModel extract_ising(const ChainCircuit& circuit, const SolverOptions& options = {},
                         int threads = 1, bool require_kramers = true);
IsingModel extract_ising(const std::vector<EquilibriumSolution>& solutions);

DispersiveModel extract_dispersive(const ChainCircuit& circuit, const TransmissionLine& line,
                                   const SolverOptions& options = {}, int threads = 1,
                                   bool require_kramers = true);
DispersiveModel extract_dispersive(const std::vector<EquilibriumSolution>& solutions,
                                   const TransmissionLine& line);

EdsrWeights extract_edsr_weights(const ChainCircuit& circuit, const SolverOptions& options = {},
                                 int threads = 1, bool require_kramers = true);
EdsrWeights extract_edsr_weights(const std::vector<EquilibriumSolution>& solutions);

KramersNullReport kramers_null_report(const ChainCircuit& circuit, const TransmissionLine& line,
                                      const SolverOptions& options = {}, int threads = 1);

/// Value for human-facing tables: MHz, with |x| below the summary threshold
/// mapped to exactly 0.
double summary_mhz(double value_ghz);

struct ScanRequest {
  std::vector<double> vertical_nh;  // L_1 = ... = L_N
  std::vector<double> coupling_nh;  // L_12 = ... = L_{N-1,N}
  bool want_ising = true;
  bool want_dispersive = true;
  bool want_edsr = true;
  /// Each point recalibrates the line to this f0 inside `bracket`.
  double target_f0_ghz = 9.0;
  LengthBracket bracket{};
};

struct ScanPoint {
  std::size_t vertical_index = 0;
  std::size_t coupling_index = 0;
  double vertical_nh = 0.0;
  double coupling_nh = 0.0;
  std::optional<IsingModel> ising;
  std::optional<DispersiveModel> dispersive;
  std::optional<EdsrWeights> edsr;
  std::string error;  // empty if every requested output succeeded
};

/// Row-major over (vertical, coupling). A failing point records its error
/// and the scan continues.
std::vector<ScanPoint> scan_2d(const ChainCircuit& circuit_template, const TransmissionLine& line,
                               const ScanRequest& request, const SolverOptions& options = {},
                               int threads = 1);

}  // namespace isene
