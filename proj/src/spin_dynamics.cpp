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

#include "isene/spin_dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "isene/errors.hpp"
#include "isene/units.hpp"

namespace isene {

namespace {

constexpr cplx kI{0.0, 1.0};

int dim_of(int num_spins) {
  if (num_spins < 1 || num_spins > 12) throw InvalidArgument("spin count out of range for dynamics");
  return 1 << num_spins;
}

void check_spin(int num_spins, int spin) {
  if (spin < 0 || spin >= num_spins) throw InvalidArgument("spin index out of range");
}

}  // namespace

CMatrix SpinHamiltonian::matrix() const {
  CMatrix m(dim());
  for (int i = 0; i < dim(); ++i) m(i, i) = diagonal_ghz[i];
  return m;
}

double SpinHamiltonian::bandwidth_ghz() const {
  if (diagonal_ghz.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(diagonal_ghz.begin(), diagonal_ghz.end());
  return *hi - *lo;
}

SpinHamiltonian static_hamiltonian(const Eigen::MatrixXd& j) {
  if (j.rows() != j.cols()) throw DimensionMismatch("J must be square");
  const int n = static_cast<int>(j.rows());
  SpinHamiltonian h{n, std::vector<double>(dim_of(n), 0.0)};
  for (int b = 0; b < h.dim(); ++b) {
    const SpinConfig c(n, static_cast<std::uint32_t>(b));
    double e = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) e += j(p, q) * c.sigma(p) * c.sigma(q);
    }
    h.diagonal_ghz[b] = e;
  }
  return h;
}

Eigen::MatrixXd ising_matrix(double j12, double j23, double j13) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3, 3);
  j(0, 1) = j(1, 0) = j12;
  j(1, 2) = j(2, 1) = j23;
  j(0, 2) = j(2, 0) = j13;
  return j;
}

Eigen::MatrixXd ising_matrix(const IsingModel& model) {
  const int n = model.num_spins();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) j(p, q) = j(q, p) = model.j(p, q);
  }
  return j;
}

SpinHamiltonian static_hamiltonian(const IsingModel& model) {
  return static_hamiltonian(ising_matrix(model));
}

CMatrix pauli_x(int num_spins, int spin) {
  check_spin(num_spins, spin);
  CMatrix m(dim_of(num_spins));
  for (int b = 0; b < m.dim(); ++b) m(b ^ (1 << spin), b) = 1.0;
  return m;
}

CMatrix pauli_y(int num_spins, int spin) {
  check_spin(num_spins, spin);
  CMatrix m(dim_of(num_spins));
  for (int b = 0; b < m.dim(); ++b) {
    // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
    m(b ^ (1 << spin), b) = ((b >> spin) & 1) ? -kI : kI;
  }
  return m;
}

CMatrix pauli_z(int num_spins, int spin) {
  check_spin(num_spins, spin);
  CMatrix m(dim_of(num_spins));
  for (int b = 0; b < m.dim(); ++b) m(b, b) = ((b >> spin) & 1) ? -1.0 : 1.0;
  return m;
}

CMatrix global_flip(int num_spins) {
  CMatrix m(dim_of(num_spins));
  const int all = m.dim() - 1;
  for (int b = 0; b < m.dim(); ++b) m(b ^ all, b) = 1.0;
  return m;
}

CMatrix drive_operator(int num_spins, int spin, const Eigen::MatrixXd& a, bool include_self_term) {
  check_spin(num_spins, spin);
  if (a.rows() != num_spins || a.cols() != num_spins) throw DimensionMismatch("A has wrong shape");
  const int d = dim_of(num_spins);
  CMatrix m(d);
  for (int b = 0; b < d; ++b) {
    const SpinConfig c(num_spins, static_cast<std::uint32_t>(b));
    double weight = 0.0;
    for (int k = 0; k < num_spins; ++k) {
      if (k != spin) weight += a(spin, k) * c.sigma(k);
    }
    const int flipped = b ^ (1 << spin);
    m(flipped, b) += (c.sigma(spin) > 0 ? kI : -kI) * weight;
    if (include_self_term) m(flipped, b) += a(spin, spin);
  }
  return m;
}

double DriveChannel::carrier_value(double t_ns) const {
  double v = 0.0;
  for (const Carrier& c : carriers) {
    v += c.weight * std::cos(units::kTwoPi * c.frequency_ghz * t_ns + c.phase_rad);
  }
  return v;
}

double DriveChannel::max_frequency_ghz() const {
  double f = 0.0;
  for (const Carrier& c : carriers) f = std::max(f, std::abs(c.frequency_ghz));
  return f;
}

DriveChannel make_channel(int num_spins, int spin, const Eigen::MatrixXd& a,
                          std::vector<Carrier> carriers, bool include_self_term) {
  return DriveChannel{spin, drive_operator(num_spins, spin, a, include_self_term), std::move(carriers)};
}

double PulseSchedule::drive_ghz(int channel, int step) const {
  return envelope_ghz[channel][step] * channels[channel].carrier_value(midpoint_ns(step));
}

double PulseSchedule::node_envelope_ghz(int channel, int node) const {
  const auto& e = envelope_ghz[channel];
  if (node <= 0) return shape.empty() ? e.front() : 0.0;
  if (node >= num_steps) return shape.empty() ? e.back() : 0.0;
  return 0.5 * (e[node - 1] + e[node]);
}

void PulseSchedule::validate() const {
  if (!(duration_ns > 0.0) || num_steps < 1) throw InvalidArgument("schedule: empty time grid");
  if (envelope_ghz.size() != channels.size()) {
    throw DimensionMismatch("schedule: one envelope per channel required");
  }
  for (const auto& e : envelope_ghz) {
    if (static_cast<int>(e.size()) != num_steps) throw DimensionMismatch("schedule: envelope length");
    for (double v : e) {
      if (!std::isfinite(v)) throw NumericError("schedule: non-finite envelope");
      if (std::abs(v) > max_amplitude_ghz) {
        throw InvalidArgument("schedule: envelope exceeds max amplitude");
      }
    }
  }
  if (!shape.empty() && static_cast<int>(shape.size()) != num_steps) {
    throw DimensionMismatch("schedule: shape length");
  }
}

PulseSchedule PulseSchedule::empty(double duration_ns, int num_steps,
                                   std::vector<DriveChannel> channels) {
  PulseSchedule s;
  s.duration_ns = duration_ns;
  s.num_steps = num_steps;
  s.envelope_ghz.assign(channels.size(), std::vector<double>(num_steps, 0.0));
  s.channels = std::move(channels);
  return s;
}

double max_problem_frequency_ghz(const SpinHamiltonian& h, const PulseSchedule& schedule) {
  double f = h.bandwidth_ghz();
  for (const DriveChannel& c : schedule.channels) f = std::max(f, c.max_frequency_ghz());
  return f;
}

void check_time_step(const SpinHamiltonian& h, const PulseSchedule& schedule) {
  const double f = max_problem_frequency_ghz(h, schedule);
  if (f > 0.0 && schedule.dt_ns() > 1.0 / (20.0 * f)) {
    std::ostringstream msg;
    msg << "dt = " << schedule.dt_ns() << " ns exceeds 1/(20 f_max) = " << 1.0 / (20.0 * f)
        << " ns";
    throw StepTooLarge(msg.str());
  }
}

CMatrix step_hamiltonian(const SpinHamiltonian& h, const PulseSchedule& schedule, int step) {
  CMatrix m = h.matrix();
  for (std::size_t c = 0; c < schedule.channels.size(); ++c) {
    const double v = schedule.drive_ghz(static_cast<int>(c), step);
    if (v == 0.0) continue;
    const CMatrix& op = schedule.channels[c].op;
    for (int i = 0; i < m.dim(); ++i) {
      for (int j = 0; j < m.dim(); ++j) m(i, j) += v * op(i, j);
    }
  }
  return m;
}

CMatrix step_propagator(const SpinHamiltonian& h, const PulseSchedule& schedule, int step) {
  CMatrix a = step_hamiltonian(h, schedule, step);
  a *= cplx(0.0, -units::kTwoPi * schedule.dt_ns());
  return expm(a);
}

Trajectory propagate(const SpinHamiltonian& h, const PulseSchedule& schedule,
                     const StateVector& psi0, const PropagateOptions& options) {
  schedule.validate();
  if (static_cast<int>(psi0.size()) != h.dim()) throw DimensionMismatch("initial state size");
  for (const DriveChannel& c : schedule.channels) {
    if (c.op.dim() != h.dim()) throw DimensionMismatch("drive operator size");
  }
  if (options.check_step) check_time_step(h, schedule);
  const int stride =
      options.sample_every > 0 ? options.sample_every : std::max(1, schedule.num_steps / 5000);
  Trajectory out;
  StateVector psi = psi0;
  auto sample = [&](int step) {
    if (!options.keep_states) return;
    out.t_ns.push_back(step * schedule.dt_ns());
    out.states.push_back(psi);
  };
  sample(0);
  for (int s = 0; s < schedule.num_steps; ++s) {
    psi = step_propagator(h, schedule, s) * psi;
    if ((s + 1) % stride == 0 || s + 1 == schedule.num_steps) sample(s + 1);
  }
  out.final_state = std::move(psi);
  return out;
}

CMatrix schedule_propagator(const SpinHamiltonian& h, const PulseSchedule& schedule,
                            bool check_step) {
  schedule.validate();
  if (check_step) check_time_step(h, schedule);
  CMatrix u = CMatrix::identity(h.dim());
  for (int s = 0; s < schedule.num_steps; ++s) u = step_propagator(h, schedule, s) * u;
  return u;
}

StateVector basis_state(int num_spins, std::uint32_t index) {
  StateVector v(dim_of(num_spins));
  v.at(index) = 1.0;
  return v;
}

StateVector LogicalFrame::up() const { return basis_state(num_spins, up_index()); }
StateVector LogicalFrame::down() const { return basis_state(num_spins, down_index()); }

StateVector LogicalFrame::plus() const {
  StateVector v(dim_of(num_spins));
  v[up_index()] = M_SQRT1_2;
  v[down_index()] = M_SQRT1_2;
  return v;
}

StateVector LogicalFrame::minus() const {
  StateVector v(dim_of(num_spins));
  v[up_index()] = M_SQRT1_2;
  v[down_index()] = -M_SQRT1_2;
  return v;
}

std::vector<std::uint32_t> LogicalFrame::error_configs() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < SpinConfig::count(num_spins); ++b) {
    if (b != up_index() && b != down_index()) out.push_back(b);
  }
  return out;
}

CMatrix LogicalFrame::projector() const {
  CMatrix p(dim_of(num_spins));
  p(up_index(), up_index()) = 1.0;
  p(down_index(), down_index()) = 1.0;
  return p;
}

LogicalFrame LogicalFrame::build(const SpinHamiltonian& h, double tolerance_ghz) {
  LogicalFrame f;
  f.num_spins = h.num_spins;
  const double e_up = h.diagonal_ghz.at(f.up_index());
  const double e_down = h.diagonal_ghz.at(f.down_index());
  if (std::abs(e_up - e_down) > tolerance_ghz) {
    throw InvalidLogicalFrame("logical pair is not degenerate");
  }
  bool below = true;
  bool above = true;
  for (std::uint32_t b : f.error_configs()) {
    const double e = h.diagonal_ghz[b];
    if (!(e > e_up + tolerance_ghz)) below = false;
    if (!(e < e_up - tolerance_ghz)) above = false;
  }
  if (!below && !above) {
    throw InvalidLogicalFrame("logical pair is not an isolated extremal doublet");
  }
  f.ground = below;
  return f;
}

LogicalDecomposition logical_decompose(const StateVector& psi, const LogicalFrame& frame) {
  if (static_cast<int>(psi.size()) != dim_of(frame.num_spins)) {
    throw DimensionMismatch("state size does not match frame");
  }
  LogicalDecomposition d;
  const cplx p = inner(frame.plus(), psi);
  const cplx m = inner(frame.minus(), psi);
  d.alpha_plus = std::abs(p);
  d.phi_plus = std::arg(p);
  d.alpha_minus = std::abs(m);
  d.phi_minus = std::arg(m);
  d.w = d.alpha_plus * d.alpha_plus + d.alpha_minus * d.alpha_minus;
  for (std::uint32_t b : frame.error_configs()) d.beta.push_back(std::abs(psi[b]));
  return d;
}

std::vector<double> unwrap(const std::vector<double>& angles) {
  std::vector<double> out = angles;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = angles[i] - angles[i - 1];
    d = std::remainder(d, units::kTwoPi);
    out[i] = out[i - 1] + d;
  }
  return out;
}

namespace {

int gauge_sign(std::uint32_t c) { return (std::popcount(c) % 2) ? -1 : 1; }

}  // namespace

CMatrix sector_basis(int num_spins) {
  const int d = dim_of(num_spins);
  const int half = d / 2;
  const std::uint32_t all = static_cast<std::uint32_t>(d - 1);
  CMatrix v(d);
  for (int r = 0; r < half; ++r) {
    const std::uint32_t c = static_cast<std::uint32_t>(r);
    const double g = gauge_sign(c);
    v(c, r) = M_SQRT1_2;
    v(c ^ all, r) = M_SQRT1_2;
    v(c, half + r) = g * M_SQRT1_2;
    v(c ^ all, half + r) = -g * M_SQRT1_2;
  }
  return v;
}

SectorBlocks to_sectors(const CMatrix& m) {
  const int d = m.dim();
  const int num_spins = std::countr_zero(static_cast<unsigned>(d));
  const CMatrix v = sector_basis(num_spins);
  const CMatrix t = v.adjoint() * m * v;
  const int half = d / 2;
  SectorBlocks b{CMatrix(half), CMatrix(half)};
  for (int i = 0; i < half; ++i) {
    for (int j = 0; j < half; ++j) {
      b.plus(i, j) = t(i, j);
      b.minus(i, j) = t(half + i, half + j);
    }
  }
  return b;
}

std::pair<StateVector, StateVector> to_sectors(const StateVector& psi) {
  const int d = static_cast<int>(psi.size());
  const int num_spins = std::countr_zero(static_cast<unsigned>(d));
  const StateVector t = apply_adjoint(sector_basis(num_spins), psi);
  const int half = d / 2;
  return {StateVector(t.begin(), t.begin() + half), StateVector(t.begin() + half, t.end())};
}

StateVector from_sectors(const StateVector& plus, const StateVector& minus) {
  if (plus.size() != minus.size()) throw DimensionMismatch("sector sizes differ");
  StateVector t = plus;
  t.insert(t.end(), minus.begin(), minus.end());
  const int num_spins = std::countr_zero(static_cast<unsigned>(t.size()));
  return sector_basis(num_spins) * t;
}

XSymmetryReport x_symmetry_report(const SpinHamiltonian& h, const std::vector<DriveChannel>& channels,
                                  double tolerance) {
  const CMatrix x = global_flip(h.num_spins);
  XSymmetryReport r;
  const CMatrix h0 = h.matrix();
  r.static_commutator = frobenius_norm(commutator(x, h0));
  if (r.static_commutator > tolerance) {
    throw SymmetryViolation("static Hamiltonian does not commute with X: norm " +
                            std::to_string(r.static_commutator));
  }
  r.static_blocks = to_sectors(h0);
  for (const DriveChannel& c : channels) {
    const double n = frobenius_norm(commutator(x, c.op));
    if (n > tolerance) {
      throw SymmetryViolation("drive on spin " + std::to_string(c.spin + 1) +
                              " does not commute with X: norm " + std::to_string(n));
    }
    r.drive_commutators.push_back(n);
    r.drive_blocks.push_back(to_sectors(c.op));
    r.drive_antisymmetry =
        std::max(r.drive_antisymmetry, frobenius_norm(r.drive_blocks.back().plus + r.drive_blocks.back().minus));
  }
  return r;
}

const ConditionalTransition& TransitionSpectrum::line(int spin, bool aligned) const {
  for (const ConditionalTransition& t : lines) {
    if (t.spin == spin && t.others_aligned == aligned) return t;
  }
  throw InvalidArgument("no such transition line");
}

TransitionSpectrum transition_spectrum(const Eigen::MatrixXd& j, double resolvability_ghz) {
  if (j.rows() != 3 || j.cols() != 3) throw InvalidArgument("transition_spectrum: N = 3 only");
  TransitionSpectrum s;
  for (int spin = 0; spin < 3; ++spin) {
    const int k = (spin + 1) % 3;
    const int l = (spin + 2) % 3;
    for (bool aligned : {true, false}) {
      ConditionalTransition t;
      t.spin = spin;
      t.others_aligned = aligned;
      t.frequency_ghz = std::abs(2.0 * (j(spin, k) + (aligned ? 1.0 : -1.0) * j(spin, l)));
      for (std::uint32_t b = 0; b < 8; ++b) {
        const SpinConfig c(3, b);
        if ((c.sigma(k) == c.sigma(l)) == aligned) t.configs.push_back(b);
      }
      s.lines.push_back(std::move(t));
    }
  }
  double gap = std::numeric_limits<double>::infinity();
  for (const ConditionalTransition& t : s.lines) {
    if (t.frequency_ghz > 0.0) gap = std::min(gap, t.frequency_ghz);
  }
  for (int spin = 0; spin < 3; ++spin) {
    const double d = std::abs(s.line(spin, true).frequency_ghz - s.line(spin, false).frequency_ghz);
    if (d > 0.0) gap = std::min(gap, d);
  }
  s.gap_ghz = std::isfinite(gap) ? gap : 0.0;
  for (std::size_t a = 0; a < s.lines.size(); ++a) {
    for (std::size_t b = a + 1; b < s.lines.size(); ++b) {
      if (std::abs(s.lines[a].frequency_ghz - s.lines[b].frequency_ghz) < resolvability_ghz) {
        std::ostringstream msg;
        msg << "lines spin " << s.lines[a].spin + 1 << (s.lines[a].others_aligned ? "a" : "x")
            << " and spin " << s.lines[b].spin + 1 << (s.lines[b].others_aligned ? "a" : "x")
            << " coincide at " << s.lines[a].frequency_ghz << " GHz";
        s.warnings.push_back(msg.str());
      }
    }
  }
  return s;
}

}  // namespace isene
