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

#include <atomic>
#include <cstdlib>
#include <string>

#include "isene/errors.hpp"
#include "isene/kernels.hpp"

namespace isene::kernels {

namespace {

const KernelTable& pick() {
  const char* env = std::getenv("ISENE_ISA");
  if (env != nullptr && std::string(env) == "scalar") return scalar_table();
  if (avx2_table() != nullptr && cpu_has_avx2()) return *avx2_table();
  return scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{&pick()};
  return table;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void force(Isa isa) {
  if (isa == Isa::kScalar) {
    slot().store(&scalar_table(), std::memory_order_release);
    return;
  }
  if (avx2_table() == nullptr || !cpu_has_avx2()) {
    throw InvalidArgument("AVX2 kernels unavailable on this machine");
  }
  slot().store(avx2_table(), std::memory_order_release);
}

std::string_view name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

}  // namespace isene::kernels
