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

#include "isene/resonator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

constexpr double kBracketEps = 1e-9;
constexpr double kFrequencyTolGhz = 1e-9;  // 1 Hz

// alpha in cot(x) = alpha x, x = omega l / v.
double load_slope(double inductive_energy_ghz, const TransmissionLine& line) {
  if (!(inductive_energy_ghz > 0.0)) {
    throw NonPositiveInductiveEnergy("inductive energy must be positive, got " +
                                     std::to_string(inductive_energy_ghz));
  }
  if (std::isinf(inductive_energy_ghz)) return 0.0;
  const double phi0 = units::kReducedFluxQuantum;
  const double e_l = units::ghz_to_joule(inductive_energy_ghz);
  return line.impedance_factor * line.v_eff_m_per_s * phi0 * phi0 /
         (line.length_m * e_l * line.z_c_ohm);
}

double root_function(double x, double alpha) { return std::cos(x) / std::sin(x) - alpha * x; }

}  // namespace

void TransmissionLine::validate() const {
  if (!(z_c_ohm > 0.0) || !(v_eff_m_per_s > 0.0) || !(impedance_factor > 0.0)) {
    throw InvalidArgument("transmission line parameters must be positive");
  }
  if (!(length_m >= 1e-5 && length_m <= 1e-1)) {
    throw InvalidArgument("transmission line length outside [1e-5, 1e-1] m");
  }
}

double TransmissionLine::quarter_wave_ghz() const { return v_eff_m_per_s / (4.0 * length_m) * 1e-9; }

double resonance_frequency(double inductive_energy_ghz, const TransmissionLine& line) {
  line.validate();
  const double alpha = load_slope(inductive_energy_ghz, line);
  const double to_ghz = line.v_eff_m_per_s / (units::kTwoPi * line.length_m) * 1e-9;
  double lo = kBracketEps;
  double hi = units::kPi - kBracketEps;
  if (!(root_function(lo, alpha) > 0.0) || !(root_function(hi, alpha) < 0.0)) {
    throw NoRootInBracket("resonance: no sign change on (0, pi)");
  }
  const double x_tol = kFrequencyTolGhz / to_ghz;
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    if (root_function(mid, alpha) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // Newton polish; the root function is smooth and monotone on the bracket.
  for (int k = 0; k < 3; ++k) {
    const double s = std::sin(x);
    const double dx = -root_function(x, alpha) / (-1.0 / (s * s) - alpha);
    x += dx;
    if (std::abs(dx) <= 1e-16 * x) break;
  }
  return x * to_ghz;
}

double resonance_residual(double frequency_ghz, double inductive_energy_ghz,
                          const TransmissionLine& line) {
  const double alpha = load_slope(inductive_energy_ghz, line);
  const double x = frequency_ghz * 1e9 * units::kTwoPi * line.length_m / line.v_eff_m_per_s;
  return std::abs(root_function(x, alpha));
}

ReadoutTable readout_table(const std::vector<EquilibriumSolution>& solutions,
                           const TransmissionLine& line) {
  ReadoutTable t;
  double sum = 0.0;
  for (const EquilibriumSolution& s : solutions) {
    t.inductive_energy_ghz.push_back(s.inductive_energy_ghz);
    t.frequency_ghz.push_back(resonance_frequency(s.inductive_energy_ghz, line));
    sum += t.frequency_ghz.back();
  }
  t.reference_frequency_ghz = sum / static_cast<double>(solutions.size());
  return t;
}

ReadoutTable readout_table(const ChainCircuit& circuit, const TransmissionLine& line,
                           const SolverOptions& options, int threads) {
  return readout_table(solve_all_configs(circuit, options, threads), line);
}

Calibration calibrate_length(const std::vector<EquilibriumSolution>& solutions,
                             const TransmissionLine& line, double target_f0_ghz,
                             LengthBracket bracket) {
  if (!(bracket.min_m > 0.0 && bracket.max_m > bracket.min_m)) {
    throw InvalidArgument("calibration bracket must satisfy 0 < min < max");
  }
  auto mean_frequency = [&](double length) {
    TransmissionLine l = line;
    l.length_m = length;
    return readout_table(solutions, l).reference_frequency_ghz;
  };
  double lo = bracket.min_m;
  double hi = bracket.max_m;
  const double f_lo = mean_frequency(lo);  // highest frequency
  const double f_hi = mean_frequency(hi);  // lowest frequency
  if (target_f0_ghz > f_lo || target_f0_ghz < f_hi) {
    throw TargetUnreachable("calibration: target " + std::to_string(target_f0_ghz) +
                                " GHz outside achievable [" + std::to_string(f_hi) + ", " +
                                std::to_string(f_lo) + "] GHz",
                            f_hi, f_lo);
  }
  Calibration cal;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = mean_frequency(mid);
    cal.iterations = it + 1;
    if (std::abs(f - target_f0_ghz) < 0.5 * kFrequencyTolGhz) {
      cal.length_m = mid;
      cal.reference_frequency_ghz = f;
      return cal;
    }
    if (f > target_f0_ghz) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double mid = 0.5 * (lo + hi);
  const double f = mean_frequency(mid);
  if (std::abs(f - target_f0_ghz) >= kFrequencyTolGhz) {
    throw NonConvergence("calibration did not reach 1 Hz", std::abs(f - target_f0_ghz));
  }
  cal.length_m = mid;
  cal.reference_frequency_ghz = f;
  return cal;
}

Calibration calibrate_length(const ChainCircuit& circuit, const TransmissionLine& line,
                             double target_f0_ghz, LengthBracket bracket,
                             const SolverOptions& options, int threads) {
  return calibrate_length(solve_all_configs(circuit, options, threads), line, target_f0_ghz,
                          bracket);
}

}  // namespace isene
