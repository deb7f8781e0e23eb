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

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define ISENE_HAVE_AVX2_KERNELS 1
#endif

namespace isene::kernels {

#ifdef ISENE_HAVE_AVX2_KERNELS

namespace {

#define ISENE_AVX2 __attribute__((target("avx2")))

// Lanes hold [re0, im0, re1, im1]. Products are rounded individually and then
// combined with one add/sub, matching the scalar reference.
ISENE_AVX2 inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

ISENE_AVX2 void matmul(const cplx* a, const cplx* b, cplx* c, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* pc = reinterpret_cast<double*>(c);
  for (int i = 0; i < 2 * n * n; ++i) pc[i] = 0.0;
  const int n2 = n & ~1;
  for (int i = 0; i < n; ++i) {
    double* row = pc + 2 * i * n;
    for (int k = 0; k < n; ++k) {
      const double ar = pa[2 * (i * n + k)];
      const double ai = pa[2 * (i * n + k) + 1];
      const __m256d vr = _mm256_set1_pd(ar);
      const __m256d vi = _mm256_set1_pd(ai);
      const double* brow = pb + 2 * k * n;
      int j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vr, bv), _mm256_mul_pd(vi, swap_pairs(bv)));
        _mm256_storeu_pd(row + 2 * j, _mm256_add_pd(_mm256_loadu_pd(row + 2 * j), prod));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        const double re = ar * br - ai * bi;
        const double im = ar * bi + ai * br;
        row[2 * j] = row[2 * j] + re;
        row[2 * j + 1] = row[2 * j + 1] + im;
      }
    }
  }
}

ISENE_AVX2 void matvec(const cplx* a, const cplx* x, cplx* y, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const int n2 = n & ~1;
  int i = 0;
  for (; i < n2; i += 2) {
    __m256d acc = _mm256_setzero_pd();
    const double* r0 = pa + 2 * i * n;
    const double* r1 = r0 + 2 * n;
    for (int k = 0; k < n; ++k) {
      const __m256d av = _mm256_set_m128d(_mm_loadu_pd(r1 + 2 * k), _mm_loadu_pd(r0 + 2 * k));
      const __m256d xr = _mm256_set1_pd(px[2 * k]);
      const __m256d xi = _mm256_set1_pd(px[2 * k + 1]);
      acc = _mm256_add_pd(acc, _mm256_addsub_pd(_mm256_mul_pd(av, xr), _mm256_mul_pd(swap_pairs(av), xi)));
    }
    _mm256_storeu_pd(py + 2 * i, acc);
  }
  for (; i < n; ++i) {
    double yr = 0.0;
    double yi = 0.0;
    for (int k = 0; k < n; ++k) {
      const double ar = pa[2 * (i * n + k)];
      const double ai = pa[2 * (i * n + k) + 1];
      const double re = ar * px[2 * k] - ai * px[2 * k + 1];
      const double im = ar * px[2 * k + 1] + ai * px[2 * k];
      yr = yr + re;
      yi = yi + im;
    }
    py[2 * i] = yr;
    py[2 * i + 1] = yi;
  }
}

ISENE_AVX2 void adjoint_matvec(const cplx* a, const cplx* x, cplx* y, int n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  for (int i = 0; i < 2 * n; ++i) py[i] = 0.0;
  const int n2 = n & ~1;
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (int k = 0; k < n; ++k) {
    const double xr = px[2 * k];
    const double xi = px[2 * k + 1];
    const __m256d vr = _mm256_set1_pd(xr);
    const __m256d vi = _mm256_set1_pd(xi);
    const double* row = pa + 2 * k * n;
    int i = 0;
    for (; i < n2; i += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * i);
      // (ai xi) - (-(ar xr)), (ar xi) + (-(ai xr))
      const __m256d t1 = _mm256_xor_pd(_mm256_mul_pd(av, vr), sign);
      const __m256d t2 = _mm256_mul_pd(swap_pairs(av), vi);
      _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), _mm256_addsub_pd(t2, t1)));
    }
    for (; i < n; ++i) {
      const double ar = row[2 * i];
      const double ai = row[2 * i + 1];
      const double re = ar * xr + ai * xi;
      const double im = ar * xi - ai * xr;
      py[2 * i] = py[2 * i] + re;
      py[2 * i + 1] = py[2 * i + 1] + im;
    }
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::kAvx2, &matmul, &matvec, &adjoint_matvec};
  return &table;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace isene::kernels
