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

#include "isene/extraction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "isene/errors.hpp"
#include "isene/parallel.hpp"

namespace isene {

namespace {

void require_kramers_point(const ChainCircuit& circuit, bool require) {
  if (require && !circuit.is_kramers_point()) {
    throw NotKramersPoint("extraction requires every external flux at 0 or pi");
  }
}

int spins_of(const std::vector<EquilibriumSolution>& solutions) {
  const std::size_t size = solutions.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw DimensionMismatch("extraction needs one solution per configuration");
  }
  return std::countr_zero(size);
}

}  // namespace

std::vector<double> IsingModel::pairwise() const {
  if (num_spins() != 3) throw InvalidArgument("pairwise(): N = 3 only");
  return {j(0, 1), j(1, 2), j(0, 2)};
}

double EdsrWeights::max_abs_off_diagonal() const {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (j != k) m = std::max(m, std::abs(a(j, k)));
    }
  }
  return m;
}

IsingModel extract_ising(const std::vector<EquilibriumSolution>& solutions) {
  spins_of(solutions);
  std::vector<double> e;
  e.reserve(solutions.size());
  for (const EquilibriumSolution& s : solutions) e.push_back(s.energy_ghz);
  return IsingModel{walsh_extract(e)};
}

IsingModel extract_ising(const ChainCircuit& circuit, const SolverOptions& options, int threads,
                         bool require_kramers) {
  require_kramers_point(circuit, require_kramers);
  return extract_ising(solve_all_configs(circuit, options, threads));
}

DispersiveModel extract_dispersive(const std::vector<EquilibriumSolution>& solutions,
                                   const TransmissionLine& line) {
  spins_of(solutions);
  const ReadoutTable table = readout_table(solutions, line);
  return DispersiveModel{walsh_extract(table.frequency_ghz), line.length_m};
}

DispersiveModel extract_dispersive(const ChainCircuit& circuit, const TransmissionLine& line,
                                   const SolverOptions& options, int threads,
                                   bool require_kramers) {
  require_kramers_point(circuit, require_kramers);
  return extract_dispersive(solve_all_configs(circuit, options, threads), line);
}

EdsrWeights extract_edsr_weights(const std::vector<EquilibriumSolution>& solutions) {
  const int n = spins_of(solutions);
  const std::uint32_t count = SpinConfig::count(n);
  EdsrWeights w;
  w.a = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> drop(count);
    for (std::uint32_t b = 0; b < count; ++b) drop[b] = solutions[b].junction_drops.at(j);
    const WalshCoefficients c = walsh_extract(drop);
    for (int k = 0; k < n; ++k) w.a(j, k) = c.single(k);
    w.max_abs_even = std::max(w.max_abs_even, c.max_abs_even());
    for (std::uint32_t b = 0; b < count; ++b) {
      const SpinConfig cfg(n, b);
      double first_order = 0.0;
      for (int k = 0; k < n; ++k) first_order += w.a(j, k) * cfg.sigma(k);
      w.truncation_residual = std::max(w.truncation_residual, std::abs(drop[b] - first_order));
      w.antisymmetry_residual =
          std::max(w.antisymmetry_residual, std::abs(drop[b] + drop[cfg.flipped().index()]));
    }
  }
  w.diagonal = w.a.diagonal();
  return w;
}

EdsrWeights extract_edsr_weights(const ChainCircuit& circuit, const SolverOptions& options,
                                 int threads, bool require_kramers) {
  require_kramers_point(circuit, require_kramers);
  return extract_edsr_weights(solve_all_configs(circuit, options, threads));
}

KramersNullReport kramers_null_report(const ChainCircuit& circuit, const TransmissionLine& line,
                                      const SolverOptions& options, int threads) {
  const std::vector<EquilibriumSolution> solutions = solve_all_configs(circuit, options, threads);
  KramersNullReport r;
  r.kramers_point = circuit.is_kramers_point();
  r.max_odd_energy_ghz = extract_ising(solutions).energy.max_abs_odd();
  r.max_odd_frequency_ghz = extract_dispersive(solutions, line).frequency.max_abs_odd();
  const int n = static_cast<int>(circuit.num_spins());
  for (std::uint32_t b = 0; b < solutions.size(); ++b) {
    const std::uint32_t partner = SpinConfig(n, b).flipped().index();
    r.max_degeneracy_splitting_ghz = std::max(
        r.max_degeneracy_splitting_ghz,
        std::abs(solutions[b].energy_ghz - solutions[partner].energy_ghz));
  }
  return r;
}

double summary_mhz(double value_ghz) {
  return std::abs(value_ghz) < kSummaryZeroGhz ? 0.0 : value_ghz * 1e3;
}

std::vector<ScanPoint> scan_2d(const ChainCircuit& circuit_template, const TransmissionLine& line,
                               const ScanRequest& request, const SolverOptions& options,
                               int threads) {
  for (double v : request.vertical_nh) {
    if (!(v > 0.0)) throw InvalidArgument("scan: vertical grid must be positive");
  }
  for (double v : request.coupling_nh) {
    if (!(v > 0.0)) throw InvalidArgument("scan: coupling grid must be positive");
  }
  const std::size_t nv = request.vertical_nh.size();
  const std::size_t nc = request.coupling_nh.size();
  std::vector<ScanPoint> points(nv * nc);
  parallel_for(points.size(), threads, [&](std::size_t p) {
    ScanPoint& pt = points[p];
    pt.vertical_index = p / nc;
    pt.coupling_index = p % nc;
    pt.vertical_nh = request.vertical_nh[pt.vertical_index];
    pt.coupling_nh = request.coupling_nh[pt.coupling_index];
    ChainCircuit c = circuit_template;
    std::fill(c.vertical_nh.begin(), c.vertical_nh.end(), pt.vertical_nh);
    std::fill(c.coupling_nh.begin(), c.coupling_nh.end(), pt.coupling_nh);
    std::vector<EquilibriumSolution> solutions;
    try {
      solutions = solve_all_configs(c, options, 1);
    } catch (const Error& e) {
      pt.error = std::string(e.kind()) + ": " + e.what();
      return;
    }
    if (request.want_ising) pt.ising = extract_ising(solutions);
    if (request.want_edsr) pt.edsr = extract_edsr_weights(solutions);
    if (request.want_dispersive) {
      try {
        TransmissionLine l = line;
        l.length_m = calibrate_length(solutions, line, request.target_f0_ghz, request.bracket)
                         .length_m;
        pt.dispersive = extract_dispersive(solutions, l);
      } catch (const Error& e) {
        pt.error = std::string(e.kind()) + ": " + e.what();
      }
    }
  });
  return points;
}

}  // namespace isene
