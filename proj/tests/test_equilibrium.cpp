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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isene/equilibrium.hpp"
#include "isene/errors.hpp"
#include "isene/units.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace isene;

TEST(Equilibrium, MatchesGridMinimumOnReferenceCircuit) {
  const ChainCircuit c = testutil::reference_circuit();
  for (const SpinConfig& cfg : testutil::all_configs(3)) {
    const EquilibriumSolution s = solve_equilibrium(c, cfg);
    const oracle::GridMinimum g = oracle::grid_minimize(c, cfg.spins());
    EXPECT_NEAR(s.energy_ghz, g.energy, 1e-6) << cfg.label();
    EXPECT_LT(s.residual, 1e-10);
  }
}

TEST(Equilibrium, MatchesGridMinimumWithRandomFlux) {
  std::mt19937_64 rng(3);
  const ChainCircuit c = testutil::random_circuit(rng, 3, true);
  for (std::uint32_t b : {0u, 5u}) {
    const SpinConfig cfg(3, b);
    EXPECT_NEAR(solve_equilibrium(c, cfg).energy_ghz, oracle::grid_minimize(c, cfg.spins()).energy, 1e-6);
  }
}

TEST(Equilibrium, FixedInputPhaseMatchesPinnedGrid) {
  const ChainCircuit c = testutil::reference_circuit();
  const SpinConfig cfg(3, 2);
  const EquilibriumSolution s = solve_equilibrium(c, cfg, InputPhaseMode::fixed(0.05));
  EXPECT_DOUBLE_EQ(s.phases_star.phi_in, 0.05);
  EXPECT_NEAR(s.energy_ghz, oracle::grid_minimize(c, cfg.spins(), 0.05).energy, 1e-6);
}

TEST(Equilibrium, HessianPositiveSemidefiniteAtMinimum) {
  const ChainCircuit c = testutil::uniform_5nh();
  for (const auto& s : solve_all_configs(c)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.hessian_at_min);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Equilibrium, SchurInductiveEnergyMatchesSecondDifference) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2; ++trial) {
    const ChainCircuit c = testutil::random_circuit(rng);
    const SpinConfig cfg(3, static_cast<std::uint32_t>(3 * trial + 1));
    const EquilibriumSolution s = solve_equilibrium(c, cfg);
    const double h = 1e-3;
    const double p = s.phases_star.phi_in;
    const double ep = solve_equilibrium(c, cfg, InputPhaseMode::fixed(p + h)).energy_ghz;
    const double em = solve_equilibrium(c, cfg, InputPhaseMode::fixed(p - h)).energy_ghz;
    const double fd = (ep - 2 * s.energy_ghz + em) / (h * h);
    EXPECT_NEAR(s.inductive_energy_ghz / fd, 1.0, 1e-6);
    EXPECT_DOUBLE_EQ(inductive_energy(s), s.inductive_energy_ghz);
  }
}

TEST(Equilibrium, KramersPairsAreDegenerate) {
  ChainCircuit c = testutil::uniform_5nh();
  for (double flux : {0.0, units::kPi}) {
    c.external_flux_rad.assign(3, flux);
    const auto sols = solve_all_configs(c);
    for (std::uint32_t b = 0; b < 8; ++b) {
      EXPECT_NEAR(sols[b].energy_ghz, sols[7 - b].energy_ghz, 1e-9);
      // Drops are odd up to a 2 pi winding (near pi when the loops hold pi flux).
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(std::remainder(sols[b].junction_drops[j] + sols[7 - b].junction_drops[j], units::kTwoPi), 0.0, 1e-9);
      }
    }
  }
}

TEST(Equilibrium, TimeReversalMapsFluxAndSpin) {
  // E_s(phi_e) = E_{-s}(-phi_e) for any flux.
  ChainCircuit c = testutil::reference_circuit();
  c.external_flux_rad = {0.4, -1.1, 2.0};
  ChainCircuit r = c;
  for (double& f : r.external_flux_rad) f = -f;
  const auto a = solve_all_configs(c);
  const auto b = solve_all_configs(r);
  for (std::uint32_t k = 0; k < 8; ++k) EXPECT_NEAR(a[k].energy_ghz, b[7 - k].energy_ghz, 1e-10);
}

TEST(Equilibrium, ParallelSolveIsBitIdentical) {
  const ChainCircuit c = testutil::reference_circuit();
  const auto a = solve_all_configs(c, {}, 1);
  const auto b = solve_all_configs(c, {}, 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].energy_ghz, b[k].energy_ghz);
    EXPECT_EQ(a[k].x_star, b[k].x_star);
  }
}

TEST(Equilibrium, ErrorsAreTyped) {
  const ChainCircuit c = testutil::reference_circuit();
  SolverOptions o;
  o.max_iterations = 1;
  o.restart_seeds = 0;
  o.tolerance = 1e-300;
  EXPECT_THROW(solve_equilibrium(c, SpinConfig(3, 0), InputPhaseMode::free(), o), NonConvergence);
  const Eigen::VectorXd bad = Eigen::VectorXd::Zero(4);
  EXPECT_THROW(solve_equilibrium(c, SpinConfig(3, 0), InputPhaseMode::free(), {}, &bad), DimensionMismatch);
  EXPECT_THROW(spectrum_vs_flux(c, {0}, 5, {0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(spectrum_vs_flux(c, {0}, 0, {1.0, 0.0}), InvalidArgument);
}

TEST(Equilibrium, SpectrumIsSmoothOnReferenceCircuit) {
  const ChainCircuit c = testutil::reference_circuit();
  std::vector<double> grid;
  for (int k = 0; k <= 32; ++k) grid.push_back(-units::kPi + k * units::kPi / 16);
  const SpectrumTable t = spectrum_vs_flux(c, {0, 7}, 1, grid);
  EXPECT_TRUE(t.discontinuities.empty());
  ASSERT_EQ(t.energy_ghz.size(), grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // Time reversal: the two Kramers partners trade places under phi -> -phi.
    EXPECT_NEAR(t.energy_ghz[k][0], t.energy_ghz[grid.size() - 1 - k][1], 1e-9);
  }
}
