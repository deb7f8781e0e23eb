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

#include "isene/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "isene/errors.hpp"
#include "isene/parallel.hpp"

namespace isene {

namespace {

struct NewtonResult {
  Eigen::VectorXd x;
  double residual;
  int iterations;
  std::vector<double> history;
};

// Newton iteration over the trailing `m` coordinates of x.
NewtonResult newton(const ChainCircuit& circuit, const SpinConfig& config, Eigen::VectorXd x,
                    Eigen::Index m, const SolverOptions& options) {
  const Eigen::Index offset = x.size() - m;
  NewtonResult out{x, 0.0, 0, {}};
  auto reduced_norm = [&](const Eigen::VectorXd& at) {
    return gradient(circuit, at, config).tail(m).norm();
  };
  if (m == 0) {
    out.residual = 0.0;
    out.history.push_back(0.0);
    return out;
  }
  double r = reduced_norm(x);
  out.history.push_back(r);
  int it = 0;
  while (r >= options.tolerance) {
    if (it >= options.max_iterations) {
      throw NonConvergence("equilibrium: max iterations exceeded for config " +
                               config.label() + ", residual " + std::to_string(r),
                           r);
    }
    const Eigen::VectorXd g = gradient(circuit, x, config).tail(m);
    const Eigen::MatrixXd h = hessian(circuit, x, config).bottomRightCorner(m, m);
    Eigen::VectorXd step = h.ldlt().solve(-g);
    if (!step.allFinite()) step = h.fullPivLu().solve(-g);
    if (!step.allFinite()) step = -g;

    double t = 1.0;
    Eigen::VectorXd trial = x;
    double rt = r;
    bool accepted = false;
    while (t > 1e-12) {
      trial = x;
      trial.segment(offset, m) += t * step;
      rt = reduced_norm(trial);
      if (rt < (1.0 - 1e-4 * t) * r || rt < options.tolerance) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      throw NonConvergence("equilibrium: line search stalled for config " + config.label() +
                               ", residual " + std::to_string(r),
                           r);
    }
    x = trial;
    r = rt;
    ++it;
    out.history.push_back(r);
  }
  out.x = x;
  out.residual = r;
  out.iterations = it;
  return out;
}

double min_eigenvalue_ratio(const Eigen::MatrixXd& h) {
  if (h.size() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  return ev.minCoeff() / scale;
}

}  // namespace

double schur_inductive_energy(const Eigen::MatrixXd& h) {
  const Eigen::Index m = h.rows() - 1;
  if (m == 0) return h(0, 0);
  const Eigen::MatrixXd inner = h.bottomRightCorner(m, m);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(inner);
  const auto d = ldlt.vectorD();
  const double scale = inner.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || d.cwiseAbs().minCoeff() <= 1e-13 * scale) {
    throw SingularInternalBlock("internal-node Hessian block is numerically singular");
  }
  const Eigen::VectorXd coupling = h.block(1, 0, m, 1);
  return h(0, 0) - coupling.dot(ldlt.solve(coupling));
}

double inductive_energy(const EquilibriumSolution& solution) {
  return schur_inductive_energy(solution.hessian_at_min);
}

EquilibriumSolution solve_equilibrium(const ChainCircuit& circuit, const SpinConfig& config,
                                      InputPhaseMode mode, const SolverOptions& options,
                                      const Eigen::VectorXd* start) {
  circuit.validate();
  const auto dim = static_cast<Eigen::Index>(circuit.num_phases());
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
  if (start != nullptr) {
    if (start->size() != dim) throw DimensionMismatch("start vector has wrong length");
    x0 = *start;
  }
  if (!mode.is_free()) x0[0] = *mode.fixed_phi_in;
  const Eigen::Index m = mode.is_free() ? dim : dim - 1;

  auto finish = [&](NewtonResult r) {
    EquilibriumSolution s;
    s.x_star = r.x;
    s.phases_star = NodePhases::from_vector(circuit.num_spins(), r.x);
    s.energy_ghz = potential_energy(circuit, r.x, config);
    s.junction_drops = junction_drops(circuit.num_spins(), r.x);
    s.hessian_at_min = hessian(circuit, r.x, config);
    s.residual = r.residual;
    s.iterations = r.iterations;
    s.residual_history = std::move(r.history);
    return s;
  };
  auto is_min = [&](const EquilibriumSolution& s, double* ratio) {
    *ratio = min_eigenvalue_ratio(s.hessian_at_min.bottomRightCorner(m, m));
    return *ratio >= -options.psd_tolerance;
  };

  EquilibriumSolution best = finish(newton(circuit, config, x0, m, options));
  double ratio = 0.0;
  if (!is_min(best, &ratio)) {
    // Saddle: restart from deterministic perturbed seeds, keep the lowest PSD root.
    std::mt19937_64 rng(0x15e4eULL + config.index());
    std::bernoulli_distribution pick(0.5);
    std::optional<EquilibriumSolution> found;
    const double saddle_ratio = ratio;
    for (int s = 0; s < options.restart_seeds; ++s) {
      Eigen::VectorXd seed = best.x_star;
      for (Eigen::Index k = dim - m; k < dim; ++k) {
        if (pick(rng)) seed[k] += pick(rng) ? options.restart_amplitude : -options.restart_amplitude;
      }
      try {
        EquilibriumSolution cand = finish(newton(circuit, config, seed, m, options));
        double r = 0.0;
        if (is_min(cand, &r) && (!found || cand.energy_ghz < found->energy_ghz)) {
          found = std::move(cand);
        }
      } catch (const NonConvergence&) {
      }
    }
    if (!found) {
      throw SaddleDetected("equilibrium: Hessian not PSD at root for config " + config.label(),
                           saddle_ratio);
    }
    best = std::move(*found);
    best.restarted = true;
  }
  try {
    best.inductive_energy_ghz = schur_inductive_energy(best.hessian_at_min);
  } catch (const SingularInternalBlock&) {
    best.inductive_energy_ghz = std::numeric_limits<double>::quiet_NaN();
  }
  return best;
}

std::vector<EquilibriumSolution> solve_all_configs(const ChainCircuit& circuit,
                                                   const SolverOptions& options, int threads) {
  const int n = static_cast<int>(circuit.num_spins());
  std::vector<EquilibriumSolution> out(SpinConfig::count(n));
  parallel_for(out.size(), threads, [&](std::size_t b) {
    out[b] = solve_equilibrium(circuit, SpinConfig(n, static_cast<std::uint32_t>(b)),
                               InputPhaseMode::free(), options);
  });
  return out;
}

SpectrumTable spectrum_vs_flux(const ChainCircuit& circuit,
                               const std::vector<std::uint32_t>& configs,
                               std::size_t flux_index, const std::vector<double>& grid,
                               const SolverOptions& options, double jump_ratio) {
  circuit.validate();
  if (flux_index >= circuit.num_spins()) throw InvalidArgument("flux index out of range");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw InvalidArgument("flux grid must be strictly increasing");
  }
  SpectrumTable table;
  table.flux_index = flux_index;
  table.flux_grid_rad = grid;
  table.configs = configs;
  table.energy_ghz.assign(grid.size(), std::vector<double>(configs.size()));
  const int n = static_cast<int>(circuit.num_spins());
  std::vector<char> jump(grid.size(), 0);
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const SpinConfig config(n, configs[c]);
    ChainCircuit work = circuit;
    Eigen::VectorXd previous;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      work.external_flux_rad[flux_index] = grid[k];
      EquilibriumSolution s;
      try {
        s = solve_equilibrium(work, config, InputPhaseMode::free(), options,
                              k == 0 ? nullptr : &previous);
      } catch (const NonConvergence& e) {
        throw NonConvergence(std::string(e.what()) + " at flux " + std::to_string(grid[k]),
                             e.last_residual());
      }
      if (k > 0) {
        const double step = grid[k] - grid[k - 1];
        if ((s.x_star - previous).cwiseAbs().maxCoeff() > jump_ratio * step) jump[k] = 1;
      }
      table.energy_ghz[k][c] = s.energy_ghz;
      previous = s.x_star;
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (jump[k]) table.discontinuities.push_back(k);
  }
  return table;
}

}  // namespace isene
