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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "isene/errors.hpp"

namespace isene {

/// One classical z-configuration of N spins. Bit h of the index is
/// (1 - sigma_h) / 2, so index 0 is all spins up.
class SpinConfig {
 public:
  static constexpr int kMaxSpins = 16;

  SpinConfig(int num_spins, std::uint32_t index) : num_spins_(num_spins), index_(index) {
    if (num_spins < 1 || num_spins > kMaxSpins) {
      throw InvalidArgument("SpinConfig: spin count out of range");
    }
    if (index >= (std::uint32_t{1} << num_spins)) {
      throw InvalidArgument("SpinConfig: index out of range");
    }
  }

  static SpinConfig from_spins(const std::vector<int>& spins) {
    std::uint32_t index = 0;
    for (std::size_t h = 0; h < spins.size(); ++h) {
      if (spins[h] != 1 && spins[h] != -1) throw InvalidArgument("SpinConfig: spins must be +-1");
      if (spins[h] == -1) index |= std::uint32_t{1} << h;
    }
    return SpinConfig(static_cast<int>(spins.size()), index);
  }

  static std::uint32_t count(int num_spins) { return std::uint32_t{1} << num_spins; }

  int num_spins() const { return num_spins_; }
  std::uint32_t index() const { return index_; }

  /// sigma_h in {-1, +1}, h zero-based.
  int sigma(int h) const { return ((index_ >> h) & 1u) ? -1 : 1; }

  std::vector<int> spins() const {
    std::vector<int> out(num_spins_);
    for (int h = 0; h < num_spins_; ++h) out[h] = sigma(h);
    return out;
  }

  SpinConfig flipped() const { return SpinConfig(num_spins_, index_ ^ (count(num_spins_) - 1)); }

  SpinConfig with_spin_flipped(int h) const {
    return SpinConfig(num_spins_, index_ ^ (std::uint32_t{1} << h));
  }

  /// Product of sigma_h over the spins in `mask`.
  int parity(std::uint32_t mask) const { return (std::popcount(index_ & mask) & 1) ? -1 : 1; }

  /// Arrow notation, spin 1 first, e.g. "uud".
  std::string label() const {
    std::string s;
    for (int h = 0; h < num_spins_; ++h) s += sigma(h) > 0 ? 'u' : 'd';
    return s;
  }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  int num_spins_;
  std::uint32_t index_;
};

}  // namespace isene
