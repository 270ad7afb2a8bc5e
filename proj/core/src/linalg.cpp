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

#include "pls/linalg.hpp"

#include <cmath>
#include <random>

#include "pls/errors.hpp"
#include "pls/rng.hpp"

namespace pls {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kConstraintViolation: return "constraint-violation";
    case ErrorKind::kInvalidRank: return "invalid-rank";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInvalidPlan: return "invalid-plan";
    case ErrorKind::kNotImplemented: return "not-implemented";
    case ErrorKind::kDomain: return "domain-error";
    case ErrorKind::kScenarioMismatch: return "scenario-mismatch";
    case ErrorKind::kNotConverged: return "not-converged";
    case ErrorKind::kConfig: return "config-error";
    case ErrorKind::kIo: return "io-error";
  }
  return "error";
}

Eigensystem hermitian_eigensystem(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, ErrorKind::kInvalidInput,
          "eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::kInvalidInput,
          "eigendecomposition failed");
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& a) { return hermitian_eigenvalues(a)(0); }

Matrix from_eigensystem(const Matrix& vectors, const RealVector& weights) {
  // Only columns with nonzero weight contribute.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights(i) != 0.0) keep.push_back(i);
  const Eigen::Index n = vectors.rows();
  if (keep.empty()) return Matrix::Zero(n, n);
  Matrix scaled(n, static_cast<Eigen::Index>(keep.size()));
  Matrix plain(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    plain.col(col) = vectors.col(keep[c]);
    scaled.col(col) = vectors.col(keep[c]) * weights(keep[c]);
  }
  Matrix out = scaled * plain.adjoint();
  return hermitian_part(out);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

double hermiticity_defect(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

int checked_sqrt_dim(Eigen::Index n) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  require(d * d == n && d >= 1, ErrorKind::kInvalidDimension,
          "matrix size " + std::to_string(n) + " is not a perfect square");
  return static_cast<int>(d);
}

bool is_power_of_two(int n, int* qubits) {
  if (n < 1 || (n & (n - 1)) != 0) return false;
  if (qubits != nullptr) {
    int k = 0;
    while ((1 << k) < n) ++k;
    *qubits = k;
  }
  return true;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

Matrix outer(const Vector& v) { return v * v.adjoint(); }

Matrix identity(int n) { return Matrix::Identity(n, n); }

namespace {

Matrix ginibre(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

}  // namespace

Matrix haar_unitary(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x4861u}));
  Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const cplx diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0) q.col(i) *= diag / mag;
  }
  return q;
}

Matrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x4865u}));
  Matrix g = ginibre(n, rng);
  return hermitian_part(g);
}

}  // namespace pls
