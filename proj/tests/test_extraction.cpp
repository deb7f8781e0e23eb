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
#include "isene/extraction.hpp"
#include "isene/walsh.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace isene;

TEST(Walsh, MatchesLeastSquaresFit) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 5; ++n) {
    std::vector<double> v(1u << n);
    for (double& x : v) x = g(rng);
    const WalshCoefficients w = walsh_extract(v);
    const auto ls = oracle::walsh_least_squares(n, v);
    for (std::size_t m = 0; m < v.size(); ++m) EXPECT_NEAR(w.c[m], ls[m], 1e-12);
    const auto back = w.reconstruct();
    for (std::size_t b = 0; b < v.size(); ++b) EXPECT_NEAR(back[b], v[b], 1e-12);
  }
}

TEST(Walsh, TableFormAndErrors) {
  std::vector<std::pair<SpinConfig, double>> table;
  for (std::uint32_t b = 0; b < 4; ++b) table.push_back({SpinConfig(2, 3 - b), 1.0 * b});
  const WalshCoefficients w = walsh_extract(2, table);
  EXPECT_DOUBLE_EQ(w.constant(), 1.5);
  table.pop_back();
  EXPECT_THROW(walsh_extract(2, table), MissingConfig);
  table.push_back(table.front());
  EXPECT_THROW(walsh_extract(2, table), DuplicateConfig);
  EXPECT_THROW(walsh_extract(std::vector<double>(3, 0.0)), DimensionMismatch);
  EXPECT_EQ(WalshCoefficients::order(0b1011), 3);
}

TEST(Walsh, OddEvenSplit) {
  // f = 2 s1 s2 + 0.5 s1 s2 s3 on three spins.
  std::vector<double> v(8);
  for (std::uint32_t b = 0; b < 8; ++b) {
    const SpinConfig c(3, b);
    v[b] = 2.0 * c.sigma(0) * c.sigma(1) + 0.5 * c.sigma(0) * c.sigma(1) * c.sigma(2);
  }
  const WalshCoefficients w = walsh_extract(v);
  EXPECT_NEAR(w.pair(0, 1), 2.0, 1e-15);
  EXPECT_NEAR(w.max_abs_odd(), 0.5, 1e-15);
  EXPECT_NEAR(w.max_abs_even(), 2.0, 1e-15);
}

TEST(Extraction, IsingAndEdsrMatchGridOracle) {
  const ChainCircuit c = testutil::reference_circuit();
  std::vector<double> e(8);
  std::vector<std::vector<double>> drops(3, std::vector<double>(8));
  for (std::uint32_t b = 0; b < 8; ++b) {
    const auto g = oracle::grid_minimize(c, SpinConfig(3, b).spins());
    e[b] = g.energy;
    drops[0][b] = g.x[0] - g.x[3];
    drops[1][b] = g.x[3] - g.x[4];
    drops[2][b] = g.x[4];
  }
  const auto ising_ls = oracle::walsh_least_squares(3, e);
  const IsingModel m = extract_ising(c);
  EXPECT_NEAR(m.j(0, 1), ising_ls[0b011], 1e-7);
  EXPECT_NEAR(m.j(1, 2), ising_ls[0b110], 1e-7);
  EXPECT_NEAR(m.j(0, 2), ising_ls[0b101], 1e-7);
  const EdsrWeights a = extract_edsr_weights(c);
  for (int j = 0; j < 3; ++j) {
    const auto w = oracle::walsh_least_squares(3, drops[j]);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(a.a(j, k), w[1u << k], 1e-6);
  }
}

TEST(Extraction, ReferenceMagnitudes) {
  const ChainCircuit c = testutil::reference_circuit();
  const IsingModel m = extract_ising(c);
  EXPECT_GT(std::abs(m.j(0, 1)), 1e-3);
  EXPECT_LT(std::abs(m.j(0, 1)), 1e-2);
  EXPECT_LT(std::abs(m.j(0, 2)), 0.5 * std::abs(m.j(0, 1)));
  EXPECT_LT(m.energy.max_abs_odd(), kKramersNullGhz);
  const EdsrWeights a = extract_edsr_weights(c);
  EXPECT_GE(a.max_abs_off_diagonal(), 0.01);
  EXPECT_LT(a.antisymmetry_residual, 1e-9);
  EXPECT_LT(a.max_abs_even, 1e-9);
}

TEST(Extraction, DispersiveMatchesReadoutTable) {
  const auto sols = solve_all_configs(testutil::reference_circuit());
  TransmissionLine line;
  line.length_m = 0.5e-3;
  const DispersiveModel d = extract_dispersive(sols, line);
  const auto ls = oracle::walsh_least_squares(3, readout_table(sols, line).frequency_ghz);
  for (std::uint32_t mask = 0; mask < 8; ++mask) EXPECT_NEAR(d.frequency.at(mask), ls[mask], 1e-12);
  EXPECT_EQ(d.length_m, line.length_m);
}

TEST(Extraction, OddTermsAppearAwayFromKramersPoint) {
  ChainCircuit c = testutil::uniform_5nh();
  TransmissionLine line;
  line.length_m = 3e-3;
  EXPECT_TRUE(kramers_null_report(c, line).passed());
  c.external_flux_rad[0] = 0.1;
  const KramersNullReport r = kramers_null_report(c, line);
  EXPECT_FALSE(r.kramers_point);
  EXPECT_FALSE(r.passed());
  EXPECT_THROW(extract_ising(c), NotKramersPoint);
  EXPECT_NO_THROW(extract_ising(c, {}, 1, false));
}

TEST(Extraction, SummaryRoundsTinyValuesToZero) {
  EXPECT_EQ(summary_mhz(1e-13), 0.0);
  EXPECT_DOUBLE_EQ(summary_mhz(1e-3), 1.0);
}

TEST(Extraction, ScanReportsPerPointFailures) {
  ScanRequest req;
  req.vertical_nh = {2.0, 5.0};
  req.coupling_nh = {10.0};
  const auto pts = scan_2d(testutil::reference_circuit(), TransmissionLine{}, req, {}, 2);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_TRUE(pts[0].error.empty());
  ASSERT_TRUE(pts[0].ising && pts[0].dispersive && pts[0].edsr);
  EXPECT_NEAR(pts[0].dispersive->f0_ghz(), 9.0, 1e-9);
  EXPECT_FALSE(pts[1].error.empty());  // 9 GHz is out of reach at 5 nH in the default bracket
  EXPECT_TRUE(pts[1].ising.has_value());
}
