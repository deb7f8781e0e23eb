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
#include <utility>
#include <vector>

#include "isene/spin_config.hpp"

namespace isene {

/// Expansion of a function on spin configurations over products of sigma_z.
/// Coefficients are indexed by a subset mask: bit h set means sigma_h is in
/// the product. Mask 0 is the constant term.
struct WalshCoefficients {
  int num_spins = 0;
  std::vector<double> c;

  double constant() const { return c.at(0); }
  double at(std::uint32_t mask) const { return c.at(mask); }
  /// Zero-based spin indices.
  double single(int h) const { return c.at(std::uint32_t{1} << h); }
  double pair(int h, int k) const { return c.at((std::uint32_t{1} << h) | (std::uint32_t{1} << k)); }

  static int order(std::uint32_t mask);

  /// Values on all 2^N configs, in config index order.
  std::vector<double> reconstruct() const;

  /// Largest |c| over odd-order masks.
  double max_abs_odd() const;
  /// Largest |c| over even-order masks, including the constant.
  double max_abs_even() const;
};

/// c_S = 2^-N sum_sigma (prod_{h in S} sigma_h) value(sigma), by the fast
/// Walsh-Hadamard butterfly. `values` is in config index order and must have
/// a power-of-two length.
WalshCoefficients walsh_extract(const std::vector<double>& values);

/// Same, from an unordered table. Throws MissingConfig / DuplicateConfig.
WalshCoefficients walsh_extract(int num_spins,
                                const std::vector<std::pair<SpinConfig, double>>& table);

}  // namespace isene
