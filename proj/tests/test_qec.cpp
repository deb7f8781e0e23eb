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

#include "isene/equilibrium.hpp"
#include "isene/errors.hpp"
#include "isene/extraction.hpp"
#include "isene/qec.hpp"
#include "test_util.hpp"

using namespace isene;

namespace {

struct Fixture {
  ReadoutTable table;
  SyndromeModel model;
  CorrectionPulses pulses;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const auto sols = solve_all_configs(testutil::reference_circuit());
    TransmissionLine line;
    line.length_m = calibrate_length(sols, line, 9.0).length_m;
    Fixture x;
    x.table = readout_table(sols, line);
    x.model = SyndromeModel::build(x.table);
    x.pulses = build_correction_pulses(ising_matrix(extract_ising(sols)), extract_edsr_weights(sols).a);
    return x;
  }();
  return f;
}

}  // namespace

TEST(Syndrome, IndexRoundTripAndCorrectionSpin) {
  for (int i = 0; i < 4; ++i) EXPECT_EQ(Syndrome::from_index(i).index(), i);
  EXPECT_EQ(Syndrome::of(SpinConfig::from_spins({1, 1, 1})).correction_spin(), -1);
  EXPECT_EQ(Syndrome::of(SpinConfig::from_spins({-1, 1, 1})).correction_spin(), 0);
  EXPECT_EQ(Syndrome::of(SpinConfig::from_spins({1, -1, 1})).correction_spin(), 1);
  EXPECT_EQ(Syndrome::of(SpinConfig::from_spins({1, 1, -1})).correction_spin(), 2);
  EXPECT_THROW(Syndrome::from_index(4), InvalidArgument);
}

TEST(Syndrome, EveryConfigClassifiesCorrectly) {
  const Fixture& f = fixture();
  EXPECT_GT(f.model.min_separation_ghz, f.model.kappa_ghz);
  for (std::uint32_t b = 0; b < 8; ++b) {
    EXPECT_EQ(classify_syndrome(f.table.frequency_ghz[b], f.model), Syndrome::of(SpinConfig(3, b)));
  }
  EXPECT_THROW(classify_syndrome(f.table.reference_frequency_ghz + 0.01, f.model), AmbiguousFrequency);
  EXPECT_THROW(SyndromeModel::build(f.table, 1e-3), AmbiguousFrequency);
}

TEST(Qec, InjectErrorFlipsOneSpin) {
  StateVector psi(8, 0.0);
  psi[0] = 1.0;
  const StateVector e = inject_error(psi, 1);
  EXPECT_EQ(e[2], cplx(1.0));
  EXPECT_THROW(inject_error(psi, 3), InvalidArgument);
}

TEST(Qec, CorrectsEverySingleFlip) {
  const Fixture& f = fixture();
  const std::vector<std::pair<cplx, cplx>> states = {
      {1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.3), std::polar(std::sqrt(0.7), 1.1)}};
  for (const auto& [alpha, beta] : states) {
    for (int e = -1; e < 3; ++e) {
      const CycleResult r = run_cycle(alpha, beta, e, f.model, f.pulses);
      EXPECT_EQ(r.report.injected_error, e);
      EXPECT_EQ(r.report.correction_spin, e);
      EXPECT_NEAR(r.report.final_w, 1.0, 1e-6);
      EXPECT_NEAR(r.report.fidelity, 1.0, 1e-6);
    }
  }
}

TEST(Qec, SpreadStateIsUncorrectable) {
  const Fixture& f = fixture();
  StateVector psi(8, 0.0);
  psi[0] = M_SQRT1_2;
  psi[1] = M_SQRT1_2;
  EXPECT_THROW(correct_cycle(psi, f.model, f.pulses, psi), UncorrectableState);
}
