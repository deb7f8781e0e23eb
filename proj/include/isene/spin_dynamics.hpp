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

#include "isene/extraction.hpp"
#include "isene/linalg.hpp"

namespace isene {

/// Diagonal static Hamiltonian in the z-configuration basis, E/h in GHz.
/// Basis order is SpinConfig::index.
struct SpinHamiltonian {
  int num_spins = 0;
  std::vector<double> diagonal_ghz;

  int dim() const { return static_cast<int>(diagonal_ghz.size()); }
  CMatrix matrix() const;
  /// Largest level spacing max(E) - min(E).
  double bandwidth_ghz() const;
};

/// sum_{h<k} J_hk sigma_h sigma_k with J symmetric (only h < k is read).
SpinHamiltonian static_hamiltonian(const Eigen::MatrixXd& j);
/// Pair terms of an extracted model (constant and other orders dropped).
SpinHamiltonian static_hamiltonian(const IsingModel& model);
/// Symmetric J matrix from J12, J23, J13.
Eigen::MatrixXd ising_matrix(double j12, double j23, double j13);
Eigen::MatrixXd ising_matrix(const IsingModel& model);

/// Single-spin Pauli operators embedded in the 2^N space; spin is zero-based.
CMatrix pauli_x(int num_spins, int spin);
CMatrix pauli_y(int num_spins, int spin);
CMatrix pauli_z(int num_spins, int spin);
/// X = prod_h sigma_x^(h), the global flip.
CMatrix global_flip(int num_spins);

/// sigma_y^(j) sum_{k != j} A_jk sigma_z^(k); with include_self_term the
/// diagonal weight adds A_jj sigma_x^(j). Row j of A is the driven junction.
CMatrix drive_operator(int num_spins, int spin, const Eigen::MatrixXd& a,
                       bool include_self_term = false);

struct Carrier {
  double frequency_ghz = 0.0;
  double phase_rad = 0.0;
  double weight = 1.0;
};

struct DriveChannel {
  int spin = 0;
  CMatrix op;
  std::vector<Carrier> carriers;

  /// sum_c weight_c cos(2 pi f_c t + phase_c), t in ns.
  double carrier_value(double t_ns) const;
  double max_frequency_ghz() const;
};

DriveChannel make_channel(int num_spins, int spin, const Eigen::MatrixXd& a,
                          std::vector<Carrier> carriers, bool include_self_term = false);

/// Per-channel envelopes on a uniform grid. Envelope sample i is held over
/// step i and multiplies the channel carriers evaluated at the step midpoint.
struct PulseSchedule {
  double duration_ns = 5000.0;
  int num_steps = 5000;
  std::vector<DriveChannel> channels;
  std::vector<std::vector<double>> envelope_ghz;  // [channel][step]
  /// Shape mask S at step midpoints; empty means no mask. S(0) = S(T) = 0.
  std::vector<double> shape;
  double max_amplitude_ghz = 1.0;

  double dt_ns() const { return duration_ns / num_steps; }
  double midpoint_ns(int step) const { return (step + 0.5) * dt_ns(); }
  double drive_ghz(int channel, int step) const;
  /// Envelope on the node grid t_k = k dt: interior nodes average the two
  /// adjacent steps; end nodes carry S = 0 when a mask is present.
  double node_envelope_ghz(int channel, int node) const;
  void validate() const;

  static PulseSchedule empty(double duration_ns, int num_steps, std::vector<DriveChannel> channels);
};

/// Largest carrier or static level-spacing frequency.
double max_problem_frequency_ghz(const SpinHamiltonian& h, const PulseSchedule& schedule);

/// Throws StepTooLarge unless dt <= 1 / (20 f_max).
void check_time_step(const SpinHamiltonian& h, const PulseSchedule& schedule);

CMatrix step_hamiltonian(const SpinHamiltonian& h, const PulseSchedule& schedule, int step);
/// exp(-i 2 pi H_step dt).
CMatrix step_propagator(const SpinHamiltonian& h, const PulseSchedule& schedule, int step);

struct Trajectory {
  std::vector<double> t_ns;
  std::vector<StateVector> states;
  StateVector final_state;
};

struct PropagateOptions {
  bool check_step = true;
  /// Sampling stride in steps; 0 picks max(1, steps / 5000).
  int sample_every = 0;
  bool keep_states = true;
};

Trajectory propagate(const SpinHamiltonian& h, const PulseSchedule& schedule,
                     const StateVector& psi0, const PropagateOptions& options = {});

/// Full-schedule unitary.
CMatrix schedule_propagator(const SpinHamiltonian& h, const PulseSchedule& schedule,
                            bool check_step = true);

StateVector basis_state(int num_spins, std::uint32_t index);

/// Logical pair |up...up>, |down...down> and their X eigenstates.
struct LogicalFrame {
  int num_spins = 3;
  bool ground = true;  // false: the pair is the highest doublet

  std::uint32_t up_index() const { return 0; }
  std::uint32_t down_index() const { return SpinConfig::count(num_spins) - 1; }
  StateVector up() const;
  StateVector down() const;
  StateVector plus() const;
  StateVector minus() const;
  std::vector<std::uint32_t> error_configs() const;
  CMatrix projector() const;

  /// Checks that the logical pair is a degenerate doublet isolated at the
  /// bottom or the top of the spectrum. Throws InvalidLogicalFrame.
  static LogicalFrame build(const SpinHamiltonian& h, double tolerance_ghz = 1e-12);
};

struct LogicalDecomposition {
  double alpha_plus = 0.0;
  double phi_plus = 0.0;
  double alpha_minus = 0.0;
  double phi_minus = 0.0;
  std::vector<double> beta;  // |amplitude| on each error config, index order
  double w = 0.0;            // alpha_plus^2 + alpha_minus^2

  double theta() const { return phi_plus - phi_minus; }
};

LogicalDecomposition logical_decompose(const StateVector& psi, const LogicalFrame& frame);

/// Removes 2 pi jumps from a sampled angle sequence.
std::vector<double> unwrap(const std::vector<double>& angles);

/// Block form in the X eigenbasis. + vectors are (|c> + |c'>)/sqrt 2 and
/// - vectors g(c) (|c> - |c'>)/sqrt 2 over representatives c with the last
/// spin up, c' the flipped config and g(c) = (-1)^{|c|}. For odd N every
/// single flip then changes the sign, so the drive blocks of the two sectors
/// are opposite.
struct SectorBlocks {
  CMatrix plus;
  CMatrix minus;
};

/// Columns of the sector basis, + sector first.
CMatrix sector_basis(int num_spins);
SectorBlocks to_sectors(const CMatrix& m);
/// Maps a full state to its (+, -) sector components.
std::pair<StateVector, StateVector> to_sectors(const StateVector& psi);
StateVector from_sectors(const StateVector& plus, const StateVector& minus);

struct XSymmetryReport {
  double static_commutator = 0.0;
  std::vector<double> drive_commutators;
  SectorBlocks static_blocks;
  std::vector<SectorBlocks> drive_blocks;
  /// max_j ||D_j^+ + D_j^-||_F.
  double drive_antisymmetry = 0.0;
};

/// Throws SymmetryViolation when any commutator norm exceeds `tolerance`.
XSymmetryReport x_symmetry_report(const SpinHamiltonian& h, const std::vector<DriveChannel>& channels,
                                  double tolerance = 1e-12);

struct ConditionalTransition {
  int spin = 0;  // zero-based
  bool others_aligned = true;
  double frequency_ghz = 0.0;
  std::vector<std::uint32_t> configs;  // configs the line starts from
};

struct TransitionSpectrum {
  std::vector<ConditionalTransition> lines;  // spin-major, aligned first
  std::vector<std::string> warnings;
  /// Smallest nonzero line frequency or same-spin line separation.
  double gap_ghz = 0.0;

  const ConditionalTransition& line(int spin, bool aligned) const;
};

/// N = 3: spin j has lines |2 (J_jk + J_jl)| (others aligned) and
/// |2 (J_jk - J_jl)| (others anti-aligned).
TransitionSpectrum transition_spectrum(const Eigen::MatrixXd& j, double resolvability_ghz = 1e-6);

}  // namespace isene
