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
#include <limits>

#include "isene/equilibrium.hpp"
#include "isene/errors.hpp"
#include "isene/resonator.hpp"
#include "isene/units.hpp"
#include "test_util.hpp"

using namespace isene;

TEST(Resonator, QuarterWaveLimit) {
  TransmissionLine line;
  line.length_m = 2.0e-3;
  const double qw = 0.39 * 299792458.0 / (4 * 2.0e-3) * 1e-9;
  EXPECT_NEAR(line.quarter_wave_ghz() / qw, 1.0, 1e-12);
  EXPECT_NEAR(resonance_frequency(std::numeric_limits<double>::infinity(), line) / qw, 1.0, 1e-9);
  EXPECT_NEAR(resonance_frequency(1e12, line) / qw, 1.0, 1e-6);
}

TEST(Resonator, RootSatisfiesDispersionRelation) {
  TransmissionLine line;
  for (double el : {1.0, 10.0, 100.0}) {
    const double f = resonance_frequency(el, line);
    EXPECT_LT(std::abs(resonance_residual(f, el, line)), 1e-8);
    EXPECT_LT(f, line.quarter_wave_ghz());
    // Independent check of cot(x) = alpha x with alpha built from scratch.
    const double hbar = 1.0545718e-34;
    const double phi0 = hbar / (2 * 1.602177e-19);
    const double alpha = 2.0 * line.v_eff_m_per_s * phi0 * phi0 / (line.length_m * el * 1e9 * 2 * units::kPi * hbar * 50.0);
    const double x = 2 * units::kPi * f * 1e9 * line.length_m / line.v_eff_m_per_s;
    EXPECT_NEAR(1.0 / std::tan(x), alpha * x, 1e-8 * alpha * x);
  }
}

TEST(Resonator, MonotoneInInductiveEnergy) {
  TransmissionLine line;
  double prev = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double el = std::pow(10.0, -1.0 + 4.0 * k / 49.0);
    const double f = resonance_frequency(el, line);
    EXPECT_GT(f, prev);
    prev = f;
  }
}

TEST(Resonator, CalibrationClosesToOneHertz) {
  const auto sols = solve_all_configs(testutil::reference_circuit());
  TransmissionLine line;
  const Calibration cal = calibrate_length(sols, line, 9.0);
  line.length_m = cal.length_m;
  EXPECT_NEAR(readout_table(sols, line).reference_frequency_ghz, 9.0, 1e-9);
  EXPECT_NEAR(cal.reference_frequency_ghz, 9.0, 1e-9);
  EXPECT_GE(cal.length_m, 0.1e-3);
  EXPECT_LE(cal.length_m, 3.3e-3);
}

TEST(Resonator, ReferenceFrequencyIsTableMean) {
  const auto sols = solve_all_configs(testutil::reference_circuit());
  TransmissionLine line;
  line.length_m = 1e-3;
  const ReadoutTable t = readout_table(sols, line);
  double mean = 0.0;
  for (double f : t.frequency_ghz) mean += f / 8;
  EXPECT_NEAR(t.reference_frequency_ghz, mean, 1e-12);
  for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(t.frequency_ghz[b], resonance_frequency(t.inductive_energy_ghz[b], line));
}

TEST(Resonator, TypedFailures) {
  TransmissionLine line;
  EXPECT_THROW(resonance_frequency(0.0, line), NonPositiveInductiveEnergy);
  EXPECT_THROW(resonance_frequency(-1.0, line), NonPositiveInductiveEnergy);
  line.length_m = 1.0;
  EXPECT_THROW(resonance_frequency(1.0, line), InvalidArgument);
  const auto sols = solve_all_configs(testutil::uniform_5nh());
  EXPECT_THROW(calibrate_length(sols, TransmissionLine{}, 9.0), TargetUnreachable);
  EXPECT_NO_THROW(calibrate_length(sols, TransmissionLine{}, 9.0, LengthBracket{1e-5, 1e-1}));
}
