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
#include <string>
#include <vector>

#include "isene/circuit.hpp"
#include "isene/equilibrium.hpp"

namespace isene {

/// Piecewise-linear flux pulse on one loop. Knot times are non-decreasing;
/// two knots at the same time encode a jump. Values in rad.
struct FluxTrajectory {
  std::size_t flux_index = 0;
  std::vector<double> t_ns;
  std::vector<double> phi_rad;

  double duration_ns() const { return t_ns.empty() ? 0.0 : t_ns.back() - t_ns.front(); }
  /// Throws EndpointNotZero, InvalidArgument.
  void validate() const;

  /// Constant Phi0 held for tau, entered and left by jumps.
  static FluxTrajectory square(std::size_t flux_index, double phi0_rad, double tau_ns);
  /// Linear ramp up to Phi0 over t_ramp, hold for t_hold, linear ramp down.
  static FluxTrajectory trapezoid(std::size_t flux_index, double phi0_rad, double t_ramp_ns,
                                  double t_hold_ns);
  FluxTrajectory negated() const;
};

struct RzOptions {
  /// Simpson sub-intervals per linear piece (rounded up to even).
  int subintervals = 64;
  SolverOptions solver{};
};

struct RzResult {
  double theta_rad = 0.0;       // unwrapped integral
  double theta_mod_2pi = 0.0;   // in [0, 2 pi)
  std::vector<double> t_ns;     // quadrature nodes
  std::vector<double> phi_rad;
  std::vector<double> delta_ghz;  // E_uuu - E_ddd at each node
};

/// theta = 2 pi int (E_up...up - E_down...down) dt, energies from warm-started
/// equilibrium solves along the trajectory.
RzResult rz_phase(const ChainCircuit& circuit, const FluxTrajectory& trajectory,
                  const RzOptions& options = {});

struct RzzResult {
  double theta_rad = 0.0;
  std::vector<std::string> warnings;
};

/// theta = 2 pi int 2 J_inter dt for J_inter sampled at t_ns and linear in
/// between (trapezoid rule, exact for that interpolant). A coupling not weaker
/// than `min_intra_j_ghz` only adds a warning.
RzzResult rzz_phase(const std::vector<double>& t_ns, const std::vector<double>& j_inter_ghz,
                    double min_intra_j_ghz = 0.0);

}  // namespace isene
