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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isene/circuit.hpp"
#include "isene/equilibrium.hpp"
#include "isene/gates.hpp"
#include "isene/resonator.hpp"

namespace isene {

enum class Task { kSolve, kExtract, kScan, kSpectrum, kDynamics, kOptimize, kGates, kQec, kCheck };

const char* task_name(Task t);
/// Throws InvalidArgument for unknown names.
Task task_from_name(const std::string& name);
const std::vector<std::string>& task_names();

struct LineConfig {
  TransmissionLine line;
  /// When set, the length is calibrated so that f_r0 hits this value.
  std::optional<double> target_f0_ghz;
  LengthBracket bracket;
};

struct ScanConfig {
  std::vector<double> vertical_nh;
  std::vector<double> coupling_nh;
  bool ising = true;
  bool dispersive = true;
  bool edsr = true;
};

struct SpectrumConfig {
  std::size_t flux_index = 0;
  std::vector<double> grid_rad;
  std::vector<std::uint32_t> configs;  // empty: all
};

struct DynamicsConfig {
  std::string sequence = "three_pi";  // or "arbitrary_theta"
  double theta_rad = 0.0;
  /// Rabi rate as a fraction of the spectral gap.
  double rabi_over_gap = 0.01;
  double dt_ns = 0.0;
  bool include_self_term = false;
  /// Rows kept in the trajectory CSV.
  int max_samples = 2000;
};

struct OptimizeConfig {
  double theta_rad = 1.5707963267948966;
  double duration_ns = 5000.0;
  int num_steps = 5000;
  int iterations = 500;
  double lambda_a = 10.0;
  double guess_amplitude_ghz = 1e-3;
  double flank_fraction = 0.05;
  bool include_self_term = false;
};

struct RzzConfig {
  std::vector<double> t_ns;
  std::vector<double> j_inter_ghz;
};

struct GatesConfig {
  std::optional<FluxTrajectory> rz;
  int rz_subintervals = 64;
  std::optional<RzzConfig> rzz;
};

struct QecConfig {
  double kappa_ghz = 1e-4;
  double duration_gaps = 40.0;
  int random_states = 20;
  std::uint64_t seed = 1;
};

struct RunConfig {
  Task task = Task::kCheck;
  ChainCircuit circuit;
  LineConfig line;
  SolverOptions solver;
  ScanConfig scan;
  SpectrumConfig spectrum;
  DynamicsConfig dynamics;
  OptimizeConfig optimize;
  GatesConfig gates;
  QecConfig qec;
  std::string output_dir = "out";
};

/// Validates the whole document and reports every violation at once.
/// Throws ConfigError.
RunConfig parse_config(const nlohmann::json& document);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
/// Throws ConfigError if the file cannot be read.
std::string read_text_file(const std::string& path);

/// Fully expanded form of a config; parsing it gives back the same config.
nlohmann::json to_json(const RunConfig& config);

/// 64-bit FNV-1a of the normalized config dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace isene
