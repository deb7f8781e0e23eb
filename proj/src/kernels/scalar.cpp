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

#include "isene/kernels.hpp"

namespace isene::kernels {

namespace {

// Written out so the vector variants can mirror the exact rounding sequence.
inline void mul_acc(double ar, double ai, double br, double bi, double& cr, double& ci) {
  const double re = ar * br - ai * bi;
  const double im = ar * bi + ai * br;
  cr = cr + re;
  ci = ci + im;
}

void matmul(const cplx* a, const cplx* b, cplx* c, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* pc = reinterpret_cast<double*>(c);
  for (int i = 0; i < 2 * n * n; ++i) pc[i] = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double ar = pa[2 * (i * n + k)];
      const double ai = pa[2 * (i * n + k) + 1];
      for (int j = 0; j < n; ++j) {
        mul_acc(ar, ai, pb[2 * (k * n + j)], pb[2 * (k * n + j) + 1], pc[2 * (i * n + j)],
                pc[2 * (i * n + j) + 1]);
      }
    }
  }
}

void matvec(const cplx* a, const cplx* x, cplx* y, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  for (int i = 0; i < n; ++i) {
    double yr = 0.0;
    double yi = 0.0;
    for (int k = 0; k < n; ++k) {
      mul_acc(pa[2 * (i * n + k)], pa[2 * (i * n + k) + 1], px[2 * k], px[2 * k + 1], yr, yi);
    }
    py[2 * i] = yr;
    py[2 * i + 1] = yi;
  }
}

void adjoint_matvec(const cplx* a, const cplx* x, cplx* y, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  for (int i = 0; i < 2 * n; ++i) py[i] = 0.0;
  for (int k = 0; k < n; ++k) {
    const double xr = px[2 * k];
    const double xi = px[2 * k + 1];
    for (int i = 0; i < n; ++i) {
      const double ar = pa[2 * (k * n + i)];
      const double ai = pa[2 * (k * n + i) + 1];
      // conj(a) x
      const double re = ar * xr + ai * xi;
      const double im = ar * xi - ai * xr;
      py[2 * i] = py[2 * i] + re;
      py[2 * i + 1] = py[2 * i + 1] + im;
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, &matmul, &matvec, &adjoint_matvec};
  return table;
}

}  // namespace isene::kernels
