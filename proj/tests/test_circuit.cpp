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

#include "isene/circuit.hpp"
#include "isene/errors.hpp"
#include "isene/units.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace isene;

TEST(Units, InductiveEnergyMatchesOracle) {
  for (double l : {0.5, 2.0, 10.0, 100.0}) {
    EXPECT_NEAR(units::inductive_energy_ghz(l) / oracle::inductor_energy_ghz(l), 1.0, 1e-12);
  }
}

TEST(Circuit, EnergyMatchesBranchOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    ChainCircuit c = testutil::random_circuit(rng, 2 + trial % 3, true);
    for (JunctionSign s : {JunctionSign::kAppendix, JunctionSign::kEnergyPhase}) {
      c.sign = s;
      for (const SpinConfig& cfg : testutil::all_configs(static_cast<int>(c.num_spins()))) {
        Eigen::VectorXd x(c.num_phases());
        for (auto& v : x) v = u(rng);
        EXPECT_NEAR(potential_energy(c, x, cfg), oracle::energy(c, x, cfg.spins()), 1e-12);
      }
    }
  }
}

TEST(Circuit, GradientAndHessianMatchCentralDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 4; ++trial) {
    const ChainCircuit c = testutil::random_circuit(rng, 3, true);
    const SpinConfig cfg(3, static_cast<std::uint32_t>(trial));
    Eigen::VectorXd x(c.num_phases());
    for (auto& v : x) v = u(rng);
    const Eigen::VectorXd g = gradient(c, x, cfg);
    const Eigen::MatrixXd hm = hessian(c, x, cfg);
    for (int k = 0; k < x.size(); ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (oracle::energy(c, xp, cfg.spins()) - oracle::energy(c, xm, cfg.spins())) / (2 * h);
      EXPECT_NEAR(g[k], fd, 1e-6 * std::max(1.0, std::abs(fd)));
      const Eigen::VectorXd dg = (gradient(c, xp, cfg) - gradient(c, xm, cfg)) / (2 * h);
      for (int l = 0; l < x.size(); ++l) EXPECT_NEAR(hm(l, k), dg[l], 1e-6 * std::max(1.0, std::abs(dg[l])));
    }
    EXPECT_LT((hm - hm.transpose()).norm(), 1e-12);
  }
}

TEST(Circuit, PhasesRoundTripAndNegate) {
  NodePhases p;
  p.phi_in = 0.3;
  p.upper = {0.1, -0.2};
  p.lower = {0.5, 0.7};
  const NodePhases q = NodePhases::from_vector(3, p.to_vector());
  EXPECT_EQ(q.to_vector(), p.to_vector());
  EXPECT_EQ(p.negated().to_vector(), -p.to_vector());
  EXPECT_THROW(NodePhases::from_vector(3, Eigen::VectorXd::Zero(4)), DimensionMismatch);
}

TEST(Circuit, JunctionDropsFollowLowerChain) {
  Eigen::VectorXd x(5);
  x << 1.0, 9.0, 9.0, 0.4, 0.1;
  const auto d = junction_drops(3, x);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_DOUBLE_EQ(d[0], 0.6);
  EXPECT_DOUBLE_EQ(d[1], 0.30000000000000004);
  EXPECT_DOUBLE_EQ(d[2], 0.1);
}

TEST(Circuit, ValidateRejectsBadInput) {
  ChainCircuit c = testutil::reference_circuit();
  EXPECT_NO_THROW(c.validate());
  c.vertical_nh[1] = -1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = testutil::reference_circuit();
  c.coupling_nh.push_back(1.0);
  EXPECT_THROW(c.validate(), DimensionMismatch);
  c = testutil::reference_circuit();
  c.junctions[0].e_sigma_ghz = -0.1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = testutil::reference_circuit();
  EXPECT_THROW(potential_energy(c, Eigen::VectorXd::Zero(4), SpinConfig(3, 0)), DimensionMismatch);
  EXPECT_THROW(potential_energy(c, Eigen::VectorXd::Zero(5), SpinConfig(2, 0)), DimensionMismatch);
}

TEST(Circuit, KramersPointDetection) {
  ChainCircuit c = testutil::reference_circuit();
  EXPECT_TRUE(c.is_kramers_point());
  c.external_flux_rad = {units::kPi, 0.0, -units::kPi};
  EXPECT_TRUE(c.is_kramers_point());
  c.external_flux_rad[1] = 0.1;
  EXPECT_FALSE(c.is_kramers_point());
}

TEST(SpinConfigTest, LabelsAndFlips) {
  const SpinConfig c = SpinConfig::from_spins({1, -1, 1});
  EXPECT_EQ(c.label(), "udu");
  EXPECT_EQ(c.flipped().label(), "dud");
  EXPECT_EQ(c.with_spin_flipped(0).label(), "ddu");
  EXPECT_EQ(c.parity(0b011), -1);
  EXPECT_THROW(SpinConfig(3, 8), InvalidArgument);
  EXPECT_THROW(SpinConfig::from_spins({1, 0}), InvalidArgument);
}
