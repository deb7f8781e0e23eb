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

#include "isene/circuit.hpp"

#include <string>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

constexpr int kGround = -1;

int upper_node(std::size_t n, std::size_t i) {
  if (i == 0) return 0;
  if (i == n) return kGround;
  return static_cast<int>(i);
}

int lower_node(std::size_t n, std::size_t i) {
  if (i == 0) return 0;
  if (i == n) return kGround;
  return static_cast<int>(n - 1 + i);
}

double node_value(const Eigen::VectorXd& x, int node) { return node == kGround ? 0.0 : x[node]; }

// Visits every branch as (plus node, minus node, branch phase, energy term).
// Each term provides value, first and second derivative in the branch phase.
struct BranchTerm {
  int plus;
  int minus;
  double value;
  double d1;
  double d2;
};

template <typename Visitor>
void for_each_branch(const ChainCircuit& c, const Eigen::VectorXd& x, const SpinConfig& config,
                     Visitor&& visit) {
  const std::size_t n = c.num_spins();
  const double sign = c.sign == JunctionSign::kAppendix ? -1.0 : 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const JunctionParams& j = c.junctions[i - 1];
    const int p = lower_node(n, i - 1);
    const int m = lower_node(n, i);
    const double theta = node_value(x, p) - node_value(x, m) -
                         j.gamma_rad() * static_cast<double>(config.sigma(static_cast<int>(i - 1)));
    const double a = sign * j.amplitude_ghz();
    visit(BranchTerm{p, m, a * std::cos(theta), -a * std::sin(theta), -a * std::cos(theta)});
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const int p = upper_node(n, i - 1);
    const int m = upper_node(n, i);
    const double phi = node_value(x, p) - node_value(x, m) - c.external_flux_rad[i - 1];
    const double el = c.vertical_energy_ghz(i - 1);
    visit(BranchTerm{p, m, 0.5 * el * phi * phi, el * phi, el});
  }
  for (std::size_t i = 1; i < n; ++i) {
    const int p = upper_node(n, i);
    const int m = lower_node(n, i);
    const double phi = node_value(x, p) - node_value(x, m);
    const double el = c.coupling_energy_ghz(i - 1);
    visit(BranchTerm{p, m, 0.5 * el * phi * phi, el * phi, el});
  }
}

void check_dimensions(const ChainCircuit& c, const Eigen::VectorXd& x, const SpinConfig& config) {
  const std::size_t n = c.num_spins();
  if (n == 0 || c.vertical_nh.size() != n || c.coupling_nh.size() + 1 != n ||
      c.external_flux_rad.size() != n) {
    throw DimensionMismatch("circuit arrays inconsistent with junction count");
  }
  if (static_cast<std::size_t>(x.size()) != c.num_phases()) {
    throw DimensionMismatch("expected " + std::to_string(c.num_phases()) + " node phases, got " +
                            std::to_string(x.size()));
  }
  if (static_cast<std::size_t>(config.num_spins()) != n) {
    throw DimensionMismatch("spin configuration size does not match circuit");
  }
}

}  // namespace

double ChainCircuit::vertical_energy_ghz(std::size_t i) const {
  return units::inductive_energy_ghz(vertical_nh.at(i));
}

double ChainCircuit::coupling_energy_ghz(std::size_t i) const {
  return units::inductive_energy_ghz(coupling_nh.at(i));
}

void ChainCircuit::validate() const {
  const std::size_t n = num_spins();
  if (n == 0) throw InvalidArgument("circuit needs at least one junction");
  if (n > static_cast<std::size_t>(SpinConfig::kMaxSpins)) {
    throw InvalidArgument("too many junctions");
  }
  if (vertical_nh.size() != n) throw DimensionMismatch("need one vertical inductance per junction");
  if (coupling_nh.size() + 1 != n) {
    throw DimensionMismatch("need one coupling inductance per adjacent junction pair");
  }
  if (external_flux_rad.size() != n) throw DimensionMismatch("need one external flux per loop");
  for (double l : vertical_nh) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("inductances must be positive");
  }
  for (double l : coupling_nh) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("inductances must be positive");
  }
  for (const JunctionParams& j : junctions) {
    if (!std::isfinite(j.e0_ghz) || !std::isfinite(j.e_sigma_ghz) || j.e_sigma_ghz < 0.0) {
      throw InvalidArgument("junction energies must be finite with e_sigma >= 0");
    }
  }
  for (double f : external_flux_rad) {
    if (!std::isfinite(f)) throw InvalidArgument("external flux must be finite");
  }
}

bool ChainCircuit::is_kramers_point(double tol) const {
  for (double f : external_flux_rad) {
    const double r = std::remainder(f, units::kPi);  // distance to nearest multiple of pi
    if (std::abs(r) > tol) return false;
  }
  return true;
}

ChainCircuit ChainCircuit::uniform(std::vector<JunctionParams> junctions, double vertical_nh,
                                   double coupling_nh) {
  ChainCircuit c;
  const std::size_t n = junctions.size();
  c.junctions = std::move(junctions);
  c.vertical_nh.assign(n, vertical_nh);
  c.coupling_nh.assign(n > 0 ? n - 1 : 0, coupling_nh);
  c.external_flux_rad.assign(n, 0.0);
  return c;
}

std::vector<JunctionParams> reference_junctions() {
  return {{0.4, 0.4}, {0.4, 0.3}, {0.4, 0.2}};
}

NodePhases NodePhases::zeros(std::size_t num_spins) {
  NodePhases p;
  p.upper.assign(num_spins - 1, 0.0);
  p.lower.assign(num_spins - 1, 0.0);
  return p;
}

NodePhases NodePhases::from_vector(std::size_t num_spins, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != 2 * num_spins - 1) {
    throw DimensionMismatch("phase vector has wrong length");
  }
  NodePhases p;
  p.phi_in = v[0];
  for (std::size_t i = 1; i < num_spins; ++i) {
    p.upper.push_back(v[static_cast<Eigen::Index>(i)]);
    p.lower.push_back(v[static_cast<Eigen::Index>(num_spins - 1 + i)]);
  }
  return p;
}

Eigen::VectorXd NodePhases::to_vector() const {
  if (upper.size() != lower.size()) throw DimensionMismatch("upper/lower node counts differ");
  const std::size_t n = upper.size() + 1;
  Eigen::VectorXd v(static_cast<Eigen::Index>(2 * n - 1));
  v[0] = phi_in;
  for (std::size_t i = 1; i < n; ++i) {
    v[static_cast<Eigen::Index>(i)] = upper[i - 1];
    v[static_cast<Eigen::Index>(n - 1 + i)] = lower[i - 1];
  }
  return v;
}

NodePhases NodePhases::negated() const {
  NodePhases p = *this;
  p.phi_in = -p.phi_in;
  for (double& v : p.upper) v = -v;
  for (double& v : p.lower) v = -v;
  return p;
}

double potential_energy(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                        const SpinConfig& config) {
  check_dimensions(circuit, x, config);
  double v = 0.0;
  for_each_branch(circuit, x, config, [&](const BranchTerm& b) { v += b.value; });
  return v;
}

Eigen::VectorXd gradient(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                         const SpinConfig& config) {
  check_dimensions(circuit, x, config);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for_each_branch(circuit, x, config, [&](const BranchTerm& b) {
    if (b.plus != kGround) g[b.plus] += b.d1;
    if (b.minus != kGround) g[b.minus] -= b.d1;
  });
  return g;
}

Eigen::MatrixXd hessian(const ChainCircuit& circuit, const Eigen::VectorXd& x,
                        const SpinConfig& config) {
  check_dimensions(circuit, x, config);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(x.size(), x.size());
  for_each_branch(circuit, x, config, [&](const BranchTerm& b) {
    if (b.plus != kGround) h(b.plus, b.plus) += b.d2;
    if (b.minus != kGround) h(b.minus, b.minus) += b.d2;
    if (b.plus != kGround && b.minus != kGround) {
      h(b.plus, b.minus) -= b.d2;
      h(b.minus, b.plus) -= b.d2;
    }
  });
  return h;
}

double potential_energy(const ChainCircuit& circuit, const NodePhases& phases,
                        const SpinConfig& config) {
  return potential_energy(circuit, phases.to_vector(), config);
}

Eigen::VectorXd gradient(const ChainCircuit& circuit, const NodePhases& phases,
                         const SpinConfig& config) {
  return gradient(circuit, phases.to_vector(), config);
}

Eigen::MatrixXd hessian(const ChainCircuit& circuit, const NodePhases& phases,
                        const SpinConfig& config) {
  return hessian(circuit, phases.to_vector(), config);
}

std::vector<double> junction_drops(std::size_t num_spins, const Eigen::VectorXd& x) {
  std::vector<double> drops(num_spins);
  for (std::size_t i = 1; i <= num_spins; ++i) {
    drops[i - 1] = node_value(x, lower_node(num_spins, i - 1)) - node_value(x, lower_node(num_spins, i));
  }
  return drops;
}

}  // namespace isene
