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

#include "isene/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "isene/errors.hpp"
#include "isene/kernels.hpp"

namespace isene {

namespace {

void check_same(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
}

}  // namespace

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& x : data_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  check_same(a, b);
  CMatrix c(a.dim());
  kernels::active().matmul(a.data(), b.data(), c.data(), a.dim());
  return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

StateVector operator*(const CMatrix& a, const StateVector& x) {
  if (static_cast<int>(x.size()) != a.dim()) throw DimensionMismatch("matvec size mismatch");
  StateVector y(x.size());
  kernels::active().matvec(a.data(), x.data(), y.data(), a.dim());
  return y;
}

StateVector apply_adjoint(const CMatrix& a, const StateVector& x) {
  if (static_cast<int>(x.size()) != a.dim()) throw DimensionMismatch("matvec size mismatch");
  StateVector y(x.size());
  kernels::active().adjoint_matvec(a.data(), x.data(), y.data(), a.dim());
  return y;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  }
  return std::sqrt(s);
}

double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    double col = 0.0;
    for (int i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

CMatrix expm(const CMatrix& a) {
  const int n = a.dim();
  const double norm1 = one_norm(a);
  if (!std::isfinite(norm1)) throw NumericError("expm: non-finite input");
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  CMatrix b = a;
  b *= std::ldexp(1.0, -squarings);

  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= 1.0 / k;
    result += term;
    if (one_norm(term) <= 1e-18 * one_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const StateVector& a) {
  double s = 0.0;
  for (const cplx& x : a) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace isene
