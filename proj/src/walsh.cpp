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

#include "isene/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "isene/errors.hpp"

namespace isene {

namespace {

// In-place unnormalized transform; it is its own inverse up to 2^N.
void butterfly(std::vector<double>& v) {
  for (std::size_t half = 1; half < v.size(); half <<= 1) {
    for (std::size_t block = 0; block < v.size(); block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = v[i];
        const double b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
}

}  // namespace

int WalshCoefficients::order(std::uint32_t mask) { return std::popcount(mask); }

std::vector<double> WalshCoefficients::reconstruct() const {
  std::vector<double> v = c;
  butterfly(v);
  return v;
}

double WalshCoefficients::max_abs_odd() const {
  double m = 0.0;
  for (std::uint32_t s = 0; s < c.size(); ++s) {
    if (order(s) % 2 == 1) m = std::max(m, std::abs(c[s]));
  }
  return m;
}

double WalshCoefficients::max_abs_even() const {
  double m = 0.0;
  for (std::uint32_t s = 0; s < c.size(); ++s) {
    if (order(s) % 2 == 0) m = std::max(m, std::abs(c[s]));
  }
  return m;
}

WalshCoefficients walsh_extract(const std::vector<double>& values) {
  const std::size_t size = values.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw DimensionMismatch("walsh_extract: need 2^N values, got " + std::to_string(size));
  }
  const int n = std::countr_zero(size);
  if (n > SpinConfig::kMaxSpins) throw DimensionMismatch("walsh_extract: too many spins");
  WalshCoefficients out;
  out.num_spins = n;
  out.c = values;
  butterfly(out.c);
  const double scale = 1.0 / static_cast<double>(size);
  for (double& x : out.c) x *= scale;
  return out;
}

WalshCoefficients walsh_extract(int num_spins,
                                const std::vector<std::pair<SpinConfig, double>>& table) {
  const std::uint32_t count = SpinConfig::count(num_spins);
  std::vector<double> values(count, 0.0);
  std::vector<char> seen(count, 0);
  for (const auto& [config, value] : table) {
    if (config.num_spins() != num_spins) {
      throw DimensionMismatch("walsh_extract: config has wrong spin count");
    }
    if (seen[config.index()]) {
      throw DuplicateConfig("walsh_extract: config " + config.label() + " appears twice");
    }
    seen[config.index()] = 1;
    values[config.index()] = value;
  }
  for (std::uint32_t b = 0; b < count; ++b) {
    if (!seen[b]) {
      throw MissingConfig("walsh_extract: config " + SpinConfig(num_spins, b).label() +
                          " missing");
    }
  }
  return walsh_extract(values);
}

}  // namespace isene
