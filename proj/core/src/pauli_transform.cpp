// Copyright 2026 The PLS Tomography Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pls/pauli_transform.hpp"

#include <cstdint>

#include "pls/errors.hpp"

namespace pls {

namespace {

// Moves bit b of x to bit 2b.
std::uint32_t spread_bits(std::uint32_t x) {
  std::uint32_t out = 0;
  for (int b = 0; x != 0; ++b, x >>= 1)
    if (x & 1u) out |= 1u << (2 * b);
  return out;
}

// Row/column pair (i, j) of qubit q sits at base-4 digit q as 2 i_q + j_q.
std::vector<std::uint32_t> spread_table(int qubits) {
  std::vector<std::uint32_t> t(std::size_t{1} << qubits);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = spread_bits(x);
  return t;
}

void check_shape(Eigen::Index rows, Eigen::Index cols, int qubits) {
  require(qubits >= 0 && qubits <= 12, ErrorKind::kInvalidDimension, "unsupported qubit count");
  require(rows == (Eigen::Index{1} << qubits) && cols == rows, ErrorKind::kDimensionMismatch,
          "matrix is not 2^n x 2^n");
}

}  // namespace

std::vector<cplx> pauli_expectations(const Matrix& m, int qubits) {
  check_shape(m.rows(), m.cols(), qubits);
  const auto dim = static_cast<std::uint32_t>(m.rows());
  const std::vector<std::uint32_t> spread = spread_table(qubits);
  std::vector<cplx> a(static_cast<std::size_t>(dim) * dim);
  for (std::uint32_t j = 0; j < dim; ++j)
    for (std::uint32_t i = 0; i < dim; ++i) a[(spread[i] << 1) | spread[j]] = m(i, j);

  const cplx iu(0.0, 1.0);
  std::size_t stride = 1;
  for (int q = 0; q < qubits; ++q, stride *= 4) {
    for (std::size_t base = 0; base < a.size(); base += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx* p = &a[base + off];
        const cplx e00 = p[0];
        const cplx e01 = p[stride];
        const cplx e10 = p[2 * stride];
        const cplx e11 = p[3 * stride];
        p[0] = e00 + e11;
        p[stride] = e01 + e10;
        p[2 * stride] = iu * (e01 - e10);
        p[3 * stride] = e00 - e11;
      }
    }
  }
  return a;
}

Matrix from_pauli_coefficients(const std::vector<cplx>& coeffs, int qubits) {
  require(qubits >= 0 && qubits <= 12, ErrorKind::kInvalidDimension, "unsupported qubit count");
  const std::size_t dim = std::size_t{1} << qubits;
  require(coeffs.size() == dim * dim, ErrorKind::kDimensionMismatch,
          "expected 4^n Pauli coefficients");
  std::vector<cplx> a = coeffs;
  const cplx iu(0.0, 1.0);
  std::size_t stride = 1;
  for (int q = 0; q < qubits; ++q, stride *= 4) {
    for (std::size_t base = 0; base < a.size(); base += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx* p = &a[base + off];
        const cplx ci = p[0];
        const cplx cx = p[stride];
        const cplx cy = p[2 * stride];
        const cplx cz = p[3 * stride];
        p[0] = ci + cz;
        p[stride] = cx - iu * cy;
        p[2 * stride] = cx + iu * cy;
        p[3 * stride] = ci - cz;
      }
    }
  }
  const std::vector<std::uint32_t> spread = spread_table(qubits);
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint32_t j = 0; j < dim; ++j)
    for (std::uint32_t i = 0; i < dim; ++i) m(i, j) = a[(spread[i] << 1) | spread[j]];
  return m;
}

void walsh_hadamard(std::vector<double>& values) {
  const std::size_t n = values.size();
  require(n > 0 && (n & (n - 1)) == 0, ErrorKind::kInvalidDimension,
          "Walsh-Hadamard length must be a power of two");
  for (std::size_t h = 1; h < n; h *= 2)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = values[j];
        const double y = values[j + h];
        values[j] = x + y;
        values[j + h] = x - y;
      }
}

}  // namespace pls
