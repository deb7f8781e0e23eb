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

#include <numbers>

// Energies are stored as E/h in GHz, phases and fluxes in radians (flux over
// the reduced flux quantum), inductances in nH, times in ns.
namespace isene::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kHbar = 1.0545718e-34;          // J s
inline constexpr double kElectronCharge = 1.602177e-19;  // C
inline constexpr double kPlanck = kTwoPi * kHbar;        // J s
inline constexpr double kReducedFluxQuantum = kHbar / (2.0 * kElectronCharge);  // Wb
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s

/// phi0^2 / (L h) in GHz.
constexpr double inductive_energy_ghz(double inductance_nh) {
  return kReducedFluxQuantum * kReducedFluxQuantum / (inductance_nh * 1e-9 * kPlanck) * 1e-9;
}

constexpr double ghz_to_joule(double e_ghz) { return e_ghz * 1e9 * kPlanck; }

}  // namespace isene::units
