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

#include "isene/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

void FluxTrajectory::validate() const {
  if (t_ns.size() != phi_rad.size()) throw DimensionMismatch("flux trajectory: t and phi differ in length");
  if (t_ns.size() < 2) throw InvalidArgument("flux trajectory needs at least two knots");
  for (std::size_t k = 0; k < t_ns.size(); ++k) {
    if (!std::isfinite(t_ns[k]) || !std::isfinite(phi_rad[k])) {
      throw InvalidArgument("flux trajectory: non-finite knot");
    }
    if (k > 0 && t_ns[k] < t_ns[k - 1]) throw InvalidArgument("flux trajectory: times must not decrease");
  }
  if (phi_rad.front() != 0.0 || phi_rad.back() != 0.0) {
    throw EndpointNotZero("flux trajectory must start and end at zero flux");
  }
}

FluxTrajectory FluxTrajectory::square(std::size_t flux_index, double phi0_rad, double tau_ns) {
  return {flux_index, {0.0, 0.0, tau_ns, tau_ns}, {0.0, phi0_rad, phi0_rad, 0.0}};
}

FluxTrajectory FluxTrajectory::trapezoid(std::size_t flux_index, double phi0_rad, double t_ramp_ns,
                                         double t_hold_ns) {
  const double t1 = t_ramp_ns;
  const double t2 = t1 + t_hold_ns;
  return {flux_index, {0.0, t1, t2, t2 + t_ramp_ns}, {0.0, phi0_rad, phi0_rad, 0.0}};
}

FluxTrajectory FluxTrajectory::negated() const {
  FluxTrajectory out = *this;
  for (double& p : out.phi_rad) p = -p;
  return out;
}

RzResult rz_phase(const ChainCircuit& circuit, const FluxTrajectory& trajectory,
                  const RzOptions& options) {
  trajectory.validate();
  circuit.validate();
  if (trajectory.flux_index >= circuit.num_spins()) throw InvalidArgument("rz: flux index out of range");
  if (options.subintervals < 1) throw InvalidArgument("rz: subintervals must be positive");
  const int m = options.subintervals + (options.subintervals % 2);

  const int n = static_cast<int>(circuit.num_spins());
  const SpinConfig up(n, 0);
  const SpinConfig down(n, SpinConfig::count(n) - 1);
  ChainCircuit c = circuit;
  Eigen::VectorXd x_up;
  Eigen::VectorXd x_down;
  bool warm = false;
  double last_phi = 0.0;
  double last_delta = 0.0;
  auto delta_at = [&](double phi) {
    if (warm && phi == last_phi) return last_delta;
    c.external_flux_rad[trajectory.flux_index] = phi;
    const EquilibriumSolution su =
        solve_equilibrium(c, up, InputPhaseMode::free(), options.solver, warm ? &x_up : nullptr);
    const EquilibriumSolution sd =
        solve_equilibrium(c, down, InputPhaseMode::free(), options.solver, warm ? &x_down : nullptr);
    x_up = su.x_star;
    x_down = sd.x_star;
    warm = true;
    last_phi = phi;
    last_delta = su.energy_ghz - sd.energy_ghz;
    return last_delta;
  };

  RzResult r;
  double integral = 0.0;  // GHz ns
  const auto& t = trajectory.t_ns;
  const auto& p = trajectory.phi_rad;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double h = (t[k + 1] - t[k]) / m;
    if (h == 0.0) continue;  // jump
    double piece = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double s = static_cast<double>(i) / m;
      const double phi = p[k] + s * (p[k + 1] - p[k]);
      const double d = delta_at(phi);
      const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      piece += w * d;
      if (i > 0 || r.t_ns.empty() || r.t_ns.back() != t[k] || r.phi_rad.back() != phi) {
        r.t_ns.push_back(t[k] + i * h);
        r.phi_rad.push_back(phi);
        r.delta_ghz.push_back(d);
      }
    }
    integral += piece * h / 3.0;
  }
  r.theta_rad = units::kTwoPi * integral;
  r.theta_mod_2pi = std::fmod(r.theta_rad, units::kTwoPi);
  if (r.theta_mod_2pi < 0.0) r.theta_mod_2pi += units::kTwoPi;
  return r;
}

RzzResult rzz_phase(const std::vector<double>& t_ns, const std::vector<double>& j_inter_ghz,
                    double min_intra_j_ghz) {
  if (t_ns.size() != j_inter_ghz.size()) throw DimensionMismatch("rzz: t and J differ in length");
  RzzResult r;
  double peak = 0.0;
  for (std::size_t k = 0; k < t_ns.size(); ++k) {
    if (!std::isfinite(t_ns[k]) || !std::isfinite(j_inter_ghz[k])) throw InvalidArgument("rzz: non-finite sample");
    if (k > 0 && t_ns[k] < t_ns[k - 1]) throw InvalidArgument("rzz: times must not decrease");
    peak = std::max(peak, std::abs(j_inter_ghz[k]));
    if (k > 0) r.theta_rad += 0.5 * (t_ns[k] - t_ns[k - 1]) * 2.0 * (j_inter_ghz[k] + j_inter_ghz[k - 1]);
  }
  r.theta_rad *= units::kTwoPi;
  if (min_intra_j_ghz > 0.0 && peak >= min_intra_j_ghz) {
    std::ostringstream msg;
    msg << "inter-module coupling " << peak * 1e3 << " MHz is not weaker than the smallest intra-module J "
        << min_intra_j_ghz * 1e3 << " MHz";
    r.warnings.push_back(msg.str());
  }
  return r;
}

}  // namespace isene
