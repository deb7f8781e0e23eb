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

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "isene/spin_config.hpp"

namespace isene {

/// Spin-dependent weak link. Energies are E/h in GHz; e_sigma > 0.
struct JunctionParams {
  double e0_ghz = 0.0;
  double e_sigma_ghz = 0.0;

  double amplitude_ghz() const { return std::hypot(e0_ghz, e_sigma_ghz); }
  /// Phase offset of the amplitude/phase form, in (0, pi) whenever e_sigma > 0.
  double gamma_rad() const { return std::atan2(e_sigma_ghz, e0_ghz); }
};

/// Sign convention of the junction term.
///   kAppendix: -sqrt(E0^2+Es^2) cos(phi - gamma sigma) = -(E0 cos phi + Es sigma sin phi)
///   kEnergyPhase: +sqrt(E0^2+Es^2) cos(phi - gamma sigma) = E0 cos phi + Es sigma sin phi
enum class JunctionSign { kAppendix, kEnergyPhase };

/// Series chain of N spin junctions between the input node and ground.
///
/// Nodes: the input phase phi_in, upper nodes u_1..u_{N-1} and lower nodes
/// d_1..d_{N-1}; u_0 = d_0 = phi_in and u_N = d_N = ground. Junction i sits
/// between d_{i-1} and d_i, vertical inductor i (loop i, external flux
/// phi_e,i) between u_{i-1} and u_i, and coupling inductor i,i+1 between u_i
/// and d_i. N = 3 is the minimal bit-flip module.
struct ChainCircuit {
  std::vector<JunctionParams> junctions;
  std::vector<double> vertical_nh;        // L_1..L_N
  std::vector<double> coupling_nh;        // L_12..L_{N-1,N}
  std::vector<double> external_flux_rad;  // phi_e,1..phi_e,N
  JunctionSign sign = JunctionSign::kAppendix;

  std::size_t num_spins() const { return junctions.size(); }
  std::size_t num_phases() const { return 2 * num_spins() - 1; }

  double vertical_energy_ghz(std::size_t i) const;
  double coupling_energy_ghz(std::size_t i) const;

  /// Throws InvalidArgument / DimensionMismatch on malformed circuits.
  void validate() const;

  /// True iff every external flux is 0 or pi modulo 2 pi.
  bool is_kramers_point(double tol = 1e-12) const;

  /// Uniform-parameter chain used throughout the tests and examples.
  static ChainCircuit uniform(std::vector<JunctionParams> junctions, double vertical_nh,
                              double coupling_nh);
};

/// Junction parameters of the minimal three-spin module.
std::vector<JunctionParams> reference_junctions();

/// Node phases in solver order: [phi_in, u_1..u_{N-1}, d_1..d_{N-1}].
struct NodePhases {
  double phi_in = 0.0;
  std::vector<double> upper;
  std::vector<double> lower;

  static NodePhases zeros(std::size_t num_spins);
  static NodePhases from_vector(std::size_t num_spins, const Eigen::VectorXd& v);
  Eigen::VectorXd to_vector() const;
  NodePhases negated() const;
};

/// Closed-form potential and its exact derivatives. All three accept either a
/// NodePhases or the packed solver vector.
double potential_energy(const ChainCircuit& circuit, const NodePhases& phases,
                        const SpinConfig& config);
double potential_energy(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                        const SpinConfig& config);

Eigen::VectorXd gradient(const ChainCircuit& circuit, const NodePhases& phases,
                         const SpinConfig& config);
Eigen::VectorXd gradient(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                         const SpinConfig& config);

Eigen::MatrixXd hessian(const ChainCircuit& circuit, const NodePhases& phases,
                        const SpinConfig& config);
Eigen::MatrixXd hessian(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                        const SpinConfig& config);

/// Phase drops d_{i-1} - d_i across each junction.
std::vector<double> junction_drops(std::size_t num_spins, const Eigen::VectorXd& x);

}  // namespace isene
