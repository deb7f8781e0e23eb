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

#include "isene/pulses.hpp"
#include "isene/spin_dynamics.hpp"

namespace isene {

struct KrotovOptions {
  double lambda_a = 10.0;
  int iterations = 500;
  /// Stop early once 1 - F drops below this (0 runs every iteration).
  double stop_infidelity = 0.0;
  /// Allowed fidelity drop per iteration before MonotonicityViolation.
  double monotonic_tolerance = 1e-10;
  bool check_step = true;
  int threads = 1;
};

struct KrotovResult {
  PulseSchedule schedule;
  /// fidelity[0] is the guess, fidelity[k] the result of iteration k.
  std::vector<double> fidelity;
  int iterations = 0;
  /// The iteration budget ran out; the schedule is the best (last) one.
  bool max_iterations_reached = false;
};

/// First-order Krotov on the channel envelopes with fixed carriers:
///   dM_c(t) = S(t) / lambda_a * Im sum_k <chi_k(t)| dH/dM_c |psi_k(t)>,
/// with H in angular units (2 pi GHz),
/// objectives |+> and |->, square-modulus subspace functional, sequential
/// update. Runs in the two X sectors of the 2^N space, where the drive is
/// block diagonal. Throws MonotonicityViolation.
KrotovResult krotov_optimize(const SpinHamiltonian& h, const GateObjective& objective,
                             const PulseSchedule& initial, const KrotovOptions& options = {});

/// Fidelity of a schedule evaluated in the same sector representation.
double sector_fidelity(const SpinHamiltonian& h, const GateObjective& objective,
                       const PulseSchedule& schedule);

}  // namespace isene
