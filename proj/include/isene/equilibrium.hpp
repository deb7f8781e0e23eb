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

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "isene/circuit.hpp"
#include "isene/spin_config.hpp"

namespace isene {

/// Whether phi_in is an unknown (free) or pinned to a given value.
struct InputPhaseMode {
  std::optional<double> fixed_phi_in;

  static InputPhaseMode free() { return {}; }
  static InputPhaseMode fixed(double phi_in) { return {phi_in}; }
  bool is_free() const { return !fixed_phi_in.has_value(); }
};

struct SolverOptions {
  double tolerance = 1e-12;  // GHz/rad on the gradient norm
  int max_iterations = 200;
  int restart_seeds = 8;
  double restart_amplitude = 0.3;  // rad
  double psd_tolerance = 1e-9;     // relative to the Hessian scale
};

struct EquilibriumSolution {
  NodePhases phases_star;
  Eigen::VectorXd x_star;  // packed form of phases_star
  double energy_ghz = 0.0;
  std::vector<double> junction_drops;  // rad
  Eigen::MatrixXd hessian_at_min;      // full (2N-1)^2, phi_in first
  double inductive_energy_ghz = 0.0;   // Schur complement; NaN if not defined
  double residual = 0.0;               // final gradient norm
  int iterations = 0;
  std::vector<double> residual_history;
  bool restarted = false;
};

/// Damped Newton on the gradient system with backtracking on |grad V|.
/// `start` seeds the iteration (zeros when empty); sweeps pass the previous
/// solution. Throws NonConvergence or SaddleDetected.
EquilibriumSolution solve_equilibrium(const ChainCircuit& circuit, const SpinConfig& config,
                                      InputPhaseMode mode = InputPhaseMode::free(),
                                      const SolverOptions& options = {},
                                      const Eigen::VectorXd* start = nullptr);

/// E_L = H00 - H0i Hii^-1 Hi0 at the solution (phi_in eliminated last).
double inductive_energy(const EquilibriumSolution& solution);
double schur_inductive_energy(const Eigen::MatrixXd& hessian);

/// Solutions for every one of the 2^N configurations, in index order.
std::vector<EquilibriumSolution> solve_all_configs(const ChainCircuit& circuit,
                                                   const SolverOptions& options = {},
                                                   int threads = 1);

struct SpectrumTable {
  std::size_t flux_index = 0;
  std::vector<double> flux_grid_rad;
  std::vector<std::uint32_t> configs;
  std::vector<std::vector<double>> energy_ghz;  // [grid point][config]
  std::vector<std::size_t> discontinuities;     // grid points with a branch jump
};

/// E_g(Phi) along one external flux with warm-started (homotopy) solves.
/// A step where any node phase jumps by more than `jump_ratio` times the flux
/// step is flagged as a discontinuity.
SpectrumTable spectrum_vs_flux(const ChainCircuit& circuit,
                               const std::vector<std::uint32_t>& configs,
                               std::size_t flux_index, const std::vector<double>& grid,
                               const SolverOptions& options = {}, double jump_ratio = 10.0);

}  // namespace isene
