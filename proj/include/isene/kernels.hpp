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

#include <complex>
#include <string_view>

// Dense complex kernels used by the propagators. Each ISA variant performs the
// same floating-point operations in the same order as the scalar reference,
// so results are bitwise identical (the build disables FMA contraction).
namespace isene::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  /// c = a * b, all n x n row-major. c must not alias a or b.
  void (*matmul)(const cplx* a, const cplx* b, cplx* c, int n);
  /// y = a x. y must not alias x.
  void (*matvec)(const cplx* a, const cplx* x, cplx* y, int n);
  /// y = a^dagger x. y must not alias x.
  void (*adjoint_matvec)(const cplx* a, const cplx* x, cplx* y, int n);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// Table chosen at first use: AVX2 when the CPU supports it, unless the
/// environment variable ISENE_ISA is set to "scalar".
const KernelTable& active();

/// Overrides the runtime choice (tests and benchmarks). Throws
/// InvalidArgument if the requested ISA is unavailable.
void force(Isa isa);

std::string_view name(Isa isa);

}  // namespace isene::kernels
