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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace pls {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues in ascending order with matching eigenvector columns.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

/// Full eigendecomposition of a Hermitian matrix. This is the dominant cost
/// of every projection; all callers go through it so that the backend can be
/// swapped (partial spectra, GPU) in one place. Only the lower triangle is
/// read.
Eigensystem hermitian_eigensystem(const Matrix& a);

/// Eigenvalues only (ascending); cheaper than the full system.
RealVector hermitian_eigenvalues(const Matrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& a);

/// Reassemble V diag(w) V^*.
Matrix from_eigensystem(const Matrix& vectors, const RealVector& weights);

Matrix kron(const Matrix& a, const Matrix& b);

/// (A + A^*) / 2.
Matrix hermitian_part(const Matrix& a);

/// max |A - A^*| over entries.
double hermiticity_defect(const Matrix& a);

/// Re Tr(A^* B), the real Frobenius inner product used on Hermitian spaces.
double frobenius_inner(const Matrix& a, const Matrix& b);

/// Returns d with d*d == n or throws kInvalidDimension.
int checked_sqrt_dim(Eigen::Index n);

/// True when n = 2^k for some k >= 0; qubits receives k.
bool is_power_of_two(int n, int* qubits = nullptr);

bool is_prime(int n);

/// |v><v|.
Matrix outer(const Vector& v);

Matrix identity(int n);

/// Haar-random unitary of size n drawn from a 64-bit seed (QR of a Ginibre
/// matrix with phase correction).
Matrix haar_unitary(int n, std::uint64_t seed);

/// Random Hermitian matrix with i.i.d. Gaussian real/imaginary parts.
Matrix random_hermitian(int n, std::uint64_t seed);

}  // namespace pls
