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
#include <vector>

namespace isene {

using cplx = std::complex<double>;
using StateVector = std::vector<cplx>;

/// Square complex matrix, row-major. Products go through the dispatched
/// kernels in isene/kernels.hpp.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  static CMatrix identity(int n);

  int dim() const { return n_; }
  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  CMatrix adjoint() const;
  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);

StateVector operator*(const CMatrix& a, const StateVector& x);
StateVector apply_adjoint(const CMatrix& a, const StateVector& x);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& a);
double one_norm(const CMatrix& a);

/// exp(a) by Taylor series with scaling and squaring (scaled norm <= 1/2).
CMatrix expm(const CMatrix& a);

/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);
double norm(const StateVector& a);

}  // namespace isene
