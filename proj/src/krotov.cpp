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

#include "isene/krotov.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/parallel.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

// Sector 0 is +, sector 1 is -. The logical objective is basis vector 0 of
// each sector.
struct SectorProblem {
  std::array<CMatrix, 2> h0;
  std::vector<std::array<CMatrix, 2>> drive;  // per channel
  int dim = 0;
};

SectorProblem split(const SpinHamiltonian& h, const PulseSchedule& schedule) {
  SectorProblem p;
  const SectorBlocks b0 = to_sectors(h.matrix());
  p.h0 = {b0.plus, b0.minus};
  p.dim = b0.plus.dim();
  for (const DriveChannel& c : schedule.channels) {
    if (c.op.dim() != h.dim()) throw DimensionMismatch("drive operator size");
    const SectorBlocks b = to_sectors(c.op);
    p.drive.push_back({b.plus, b.minus});
  }
  return p;
}

CMatrix sector_step(const SectorProblem& p, const PulseSchedule& s, int sector, int step,
                    const std::vector<double>& carrier) {
  CMatrix a = p.h0[sector];
  for (std::size_t c = 0; c < p.drive.size(); ++c) {
    const double v = s.envelope_ghz[c][step] * carrier[c];
    if (v == 0.0) continue;
    const CMatrix& d = p.drive[c][sector];
    for (int i = 0; i < p.dim; ++i) {
      for (int k = 0; k < p.dim; ++k) a(i, k) += v * d(i, k);
    }
  }
  a *= cplx(0.0, -units::kTwoPi * s.dt_ns());
  return expm(a);
}

std::vector<std::vector<double>> carrier_table(const PulseSchedule& s) {
  std::vector<std::vector<double>> t(s.num_steps, std::vector<double>(s.channels.size()));
  for (int i = 0; i < s.num_steps; ++i) {
    for (std::size_t c = 0; c < s.channels.size(); ++c) t[i][c] = s.channels[c].carrier_value(s.midpoint_ns(i));
  }
  return t;
}

std::array<cplx, 2> target_phases(const GateObjective& o) {
  return {std::polar(1.0, 0.5 * o.theta_rad), std::polar(1.0, -0.5 * o.theta_rad)};
}

StateVector unit(int dim) {
  StateVector v(dim);
  v[0] = 1.0;
  return v;
}

}  // namespace

double sector_fidelity(const SpinHamiltonian& h, const GateObjective& objective,
                       const PulseSchedule& schedule) {
  schedule.validate();
  const SectorProblem p = split(h, schedule);
  const auto carriers = carrier_table(schedule);
  const auto tgt = target_phases(objective);
  cplx tau = 0.0;
  for (int s = 0; s < 2; ++s) {
    StateVector psi = unit(p.dim);
    for (int i = 0; i < schedule.num_steps; ++i) psi = sector_step(p, schedule, s, i, carriers[i]) * psi;
    tau += std::conj(tgt[s]) * psi[0];
  }
  return std::norm(tau) / 4.0;
}

KrotovResult krotov_optimize(const SpinHamiltonian& h, const GateObjective& objective,
                             const PulseSchedule& initial, const KrotovOptions& options) {
  if (options.iterations < 0) throw InvalidArgument("krotov: negative iteration count");
  if (!(options.lambda_a > 0.0)) throw InvalidArgument("krotov: lambda_a must be positive");
  initial.validate();
  if (options.check_step) check_time_step(h, initial);

  KrotovResult result;
  result.schedule = initial;
  PulseSchedule& sched = result.schedule;
  const int n = sched.num_steps;
  const std::size_t channels = sched.channels.size();
  const SectorProblem p = split(h, sched);
  const auto carriers = carrier_table(sched);
  const auto tgt = target_phases(objective);

  // Forward propagators of the current pulses, per sector and step.
  std::array<std::vector<CMatrix>, 2> u;
  std::array<StateVector, 2> psi_t;
  parallel_for(2, options.threads, [&](std::size_t s) {
    u[s].resize(n);
    StateVector psi = unit(p.dim);
    for (int i = 0; i < n; ++i) {
      u[s][i] = sector_step(p, sched, static_cast<int>(s), i, carriers[i]);
      psi = u[s][i] * psi;
    }
    psi_t[s] = psi;
  });
  auto fidelity_of = [&](const std::array<StateVector, 2>& final) {
    cplx tau = 0.0;
    for (int s = 0; s < 2; ++s) tau += std::conj(tgt[s]) * final[s][0];
    return std::pair{std::norm(tau) / 4.0, tau};
  };
  auto [f, tau] = fidelity_of(psi_t);
  result.fidelity.push_back(f);

  std::array<std::vector<StateVector>, 2> chi;
  for (int it = 0; it < options.iterations; ++it) {
    // Backward pass with the old pulses: chi(T) = dF / d<psi(T)|.
    parallel_for(2, options.threads, [&](std::size_t s) {
      chi[s].resize(n + 1);
      StateVector c = unit(p.dim);
      for (cplx& x : c) x *= tgt[s] * tau / 4.0;
      chi[s][n] = c;
      for (int i = n - 1; i >= 0; --i) chi[s][i] = apply_adjoint(u[s][i], chi[s][i + 1]);
    });

    // Sequential forward pass with immediate updates.
    std::array<StateVector, 2> psi = {unit(p.dim), unit(p.dim)};
    for (int i = 0; i < n; ++i) {
      const double shape = sched.shape.empty() ? 1.0 : sched.shape[i];
      for (std::size_t c = 0; c < channels; ++c) {
        double g = 0.0;
        for (int s = 0; s < 2; ++s) g += std::imag(inner(chi[s][i], p.drive[c][s] * psi[s]));
        sched.envelope_ghz[c][i] += shape / options.lambda_a * units::kTwoPi * carriers[i][c] * g;
      }
      for (int s = 0; s < 2; ++s) {
        u[s][i] = sector_step(p, sched, s, i, carriers[i]);
        psi[s] = u[s][i] * psi[s];
      }
    }
    const auto [f_new, tau_new] = fidelity_of(psi);
    result.fidelity.push_back(f_new);
    result.iterations = it + 1;
    if (f_new < f - options.monotonic_tolerance) {
      std::ostringstream msg;
      msg << "krotov: fidelity dropped from " << f << " to " << f_new << " at iteration " << it + 1;
      throw MonotonicityViolation(msg.str(), it + 1, f - f_new);
    }
    f = f_new;
    tau = tau_new;
    if (options.stop_infidelity > 0.0 && 1.0 - f < options.stop_infidelity) break;
  }
  result.max_iterations_reached = options.iterations > 0 && result.iterations == options.iterations;
  sched.validate();
  return result;
}

}  // namespace isene
