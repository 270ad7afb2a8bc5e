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

#include "pls/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pls/errors.hpp"
#include "pls/tolerances.hpp"

namespace pls {

namespace {

void check_state(const Matrix& m) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorKind::kDimensionMismatch,
          "density matrix must be square");
  require(hermiticity_defect(m) <= kTol.hermiticity, ErrorKind::kConstraintViolation,
          "density matrix is not Hermitian");
  require(std::abs(m.trace() - cplx(1.0)) <= kTol.trace, ErrorKind::kConstraintViolation,
          "density matrix trace differs from one");
  require(min_eigenvalue(m) >= -kTol.psd, ErrorKind::kConstraintViolation,
          "density matrix has a negative eigenvalue");
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  check_state(entries_);
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.squaredNorm();
  require(n > 0, ErrorKind::kInvalidInput, "zero state vector");
  Matrix rho = outer(psi) / n;
  return DensityMatrix(hermitian_part(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  require(dim >= 1, ErrorKind::kInvalidDimension, "dimension must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

KrausSet::KrausSet(int dim, std::vector<Matrix> operators)
    : dim_(dim), operators_(std::move(operators)) {
  require(dim >= 1, ErrorKind::kInvalidDimension, "dimension must be positive");
  require(!operators_.empty(), ErrorKind::kInvalidInput, "empty Kraus set");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : operators_) {
    require(k.rows() == dim && k.cols() == dim, ErrorKind::kDimensionMismatch,
            "Kraus operator has wrong shape");
    sum += k.adjoint() * k;
  }
  require((sum - identity(dim)).cwiseAbs().maxCoeff() <= kTol.structural,
          ErrorKind::kConstraintViolation, "Kraus set is not trace preserving");
}

Matrix KrausSet::apply(const Matrix& rho) const {
  require(rho.rows() == dim_ && rho.cols() == dim_, ErrorKind::kDimensionMismatch,
          "state dimension does not match channel");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const Matrix& k : operators_) out += k * rho * k.adjoint();
  return out;
}

int KrausSet::rank() const {
  const auto n = static_cast<Eigen::Index>(operators_.size());
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = (operators_[i].conjugate().cwiseProduct(operators_[j])).sum();
  const RealVector ev = hermitian_eigenvalues(hermitian_part(gram));
  int r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kTol.rank) ++r;
  return r;
}

ChoiMatrix::ChoiMatrix(int dim, Matrix entries) : dim_(dim), entries_(std::move(entries)) {
  require(dim >= 1, ErrorKind::kInvalidDimension, "dimension must be positive");
  require(entries_.rows() == dim * dim && entries_.cols() == dim * dim,
          ErrorKind::kDimensionMismatch, "Choi matrix must be d^2 x d^2");
  require(hermiticity_defect(entries_) <= 1e-10, ErrorKind::kConstraintViolation,
          "Choi matrix is not Hermitian");
  require(std::abs(entries_.trace() - cplx(1.0)) <= 1e-8, ErrorKind::kConstraintViolation,
          "Choi matrix trace differs from one");
}

bool ChoiMatrix::is_physical(double tol) const {
  if (min_eigenvalue(entries_) < -tol) return false;
  const Matrix marginal = partial_trace(entries_, dim_, PartialTraceOver::kSystem);
  return (marginal - identity(dim_) / static_cast<double>(dim_)).cwiseAbs().maxCoeff() <= tol;
}

int ChoiMatrix::numerical_rank(double tol) const {
  const RealVector ev = hermitian_eigenvalues(entries_);
  int r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol) ++r;
  return r;
}

DensityMatrix maximally_entangled_state(int dim) {
  require(dim >= 2, ErrorKind::kInvalidDimension, "maximally entangled state needs d >= 2");
  Vector psi = Vector::Zero(dim * dim);
  for (int q = 0; q < dim; ++q) psi(q * dim + q) = 1.0 / std::sqrt(static_cast<double>(dim));
  return DensityMatrix(outer(psi));
}

ChoiMatrix choi_from_kraus(const KrausSet& kraus) {
  const int d = kraus.dim();
  const int n = d * d;
  Matrix choi = Matrix::Zero(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Vector v(n);
  for (const Matrix& k : kraus.operators()) {
    // (K (x) 1)|Omega> has component K(i, q)/sqrt(d) at |i>|q>.
    for (int i = 0; i < d; ++i)
      for (int q = 0; q < d; ++q) v(i * d + q) = k(i, q) * scale;
    choi.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(d, hermitian_part(choi));
}

Matrix apply_choi_map(const Matrix& choi, const Matrix& rho) {
  const int d = static_cast<int>(rho.rows());
  require(choi.rows() == d * d && choi.cols() == d * d, ErrorKind::kDimensionMismatch,
          "Choi matrix and state dimensions differ");
  // out(i, i') = d sum_{j, j'} Phi(i d + j, i' d + j') rho^T(j', j)
  //            = d sum_{j, j'} Phi(i d + j, i' d + j') rho(j, j').
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int ip = 0; ip < d; ++ip) {
      cplx acc = 0.0;
      for (int j = 0; j < d; ++j)
        for (int jp = 0; jp < d; ++jp) acc += choi(i * d + j, ip * d + jp) * rho(j, jp);
      out(i, ip) = acc * static_cast<double>(d);
    }
  return out;
}

DensityMatrix apply_via_choi(const ChoiMatrix& choi, const DensityMatrix& rho) {
  require(choi.dim() == rho.dim(), ErrorKind::kDimensionMismatch,
          "Choi matrix and state dimensions differ");
  Matrix out = hermitian_part(apply_choi_map(choi.matrix(), rho.matrix()));
  // Renormalise round-off in the trace only; positivity is inherited.
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

Matrix partial_trace(const Matrix& m, int dim, PartialTraceOver which) {
  require(dim >= 1, ErrorKind::kInvalidDimension, "dimension must be positive");
  require(m.rows() == dim * dim && m.cols() == dim * dim, ErrorKind::kInvalidDimension,
          "matrix is not d^2 x d^2 for the declared d");
  Matrix out = Matrix::Zero(dim, dim);
  if (which == PartialTraceOver::kSystem) {
    for (int i = 0; i < dim; ++i) out += m.block(i * dim, i * dim, dim, dim);
  } else {
    for (int i = 0; i < dim; ++i)
      for (int ip = 0; ip < dim; ++ip) out(i, ip) = m.block(i * dim, ip * dim, dim, dim).trace();
  }
  return out;
}

double distance(const Matrix& a, const Matrix& b, Metric metric) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kDimensionMismatch,
          "distance between matrices of different shape");
  const Matrix diff = a - b;
  switch (metric) {
    case Metric::kFrobenius:
      return diff.norm();
    case Metric::kTrace:
      return hermitian_eigenvalues(hermitian_part(diff)).cwiseAbs().sum();
    case Metric::kOperator:
      return hermitian_eigenvalues(hermitian_part(diff)).cwiseAbs().maxCoeff();
  }
  return 0.0;
}

double fidelity(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kDimensionMismatch,
          "fidelity between matrices of different shape");
  const Eigensystem ea = hermitian_eigensystem(hermitian_part(a));
  const RealVector sqrt_vals = ea.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_a = ea.vectors * sqrt_vals.asDiagonal() * ea.vectors.adjoint();
  const Matrix inner = hermitian_part(sqrt_a * b * sqrt_a);
  const double root = hermitian_eigenvalues(inner).cwiseMax(0.0).cwiseSqrt().sum();
  return root * root;
}

Matrix qft_unitary(int dim) {
  Matrix u(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
      u(j, k) = std::polar(norm, angle);
    }
  return u;
}

namespace {

Matrix single_pauli(int which) {
  Matrix p(2, 2);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

}  // namespace

std::vector<Matrix> orthogonal_unitaries(int dim, int count) {
  require(count >= 1 && count <= dim * dim, ErrorKind::kInvalidRank,
          "requested " + std::to_string(count) + " orthogonal unitaries in dimension " +
              std::to_string(dim));
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(count));
  int qubits = 0;
  if (is_power_of_two(dim, &qubits)) {
    for (int idx = 0; idx < count; ++idx) {
      Matrix m = Matrix::Identity(1, 1);
      int rest = idx;
      std::vector<int> digits(static_cast<std::size_t>(qubits));
      for (int q = qubits - 1; q >= 0; --q) {
        digits[static_cast<std::size_t>(q)] = rest % 4;
        rest /= 4;
      }
      for (int q = 0; q < qubits; ++q) m = kron(m, single_pauli(digits[static_cast<std::size_t>(q)]));
      out.push_back(std::move(m));
    }
    return out;
  }
  // Weyl-Heisenberg: X|j> = |j+1>, Z|j> = w^j |j>.
  for (int idx = 0; idx < count; ++idx) {
    const int a = idx / dim;
    const int b = idx % dim;
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * j) % dim) / dim;
      m((j + a) % dim, j) = std::polar(1.0, angle);
    }
    out.push_back(std::move(m));
  }
  return out;
}

ChannelSpec ChannelSpec::identity(int dim) {
  ChannelSpec s;
  s.kind = ChannelKind::kIdentity;
  s.dim = dim;
  return s;
}

ChannelSpec ChannelSpec::unitary_channel(Matrix u) {
  require(u.rows() == u.cols(), ErrorKind::kDimensionMismatch, "unitary must be square");
  require((u.adjoint() * u - pls::identity(static_cast<int>(u.rows()))).cwiseAbs().maxCoeff() <=
              kTol.structural,
          ErrorKind::kConstraintViolation, "matrix is not unitary");
  ChannelSpec s;
  s.kind = ChannelKind::kUnitary;
  s.dim = static_cast<int>(u.rows());
  s.unitary = std::move(u);
  return s;
}

ChannelSpec ChannelSpec::random_unitary(int dim, std::uint64_t seed) {
  return unitary_channel(haar_unitary(dim, seed));
}

ChannelSpec ChannelSpec::noisy_qft(int dim, double measure_prob) {
  require(measure_prob >= 0.0 && measure_prob <= 1.0, ErrorKind::kInvalidInput,
          "measure_prob must lie in [0, 1]");
  require(dim >= 2 && dim % 2 == 0, ErrorKind::kInvalidDimension,
          "noisy QFT measures the first qubit and needs an even dimension");
  ChannelSpec s;
  s.kind = ChannelKind::kNoisyQft;
  s.dim = dim;
  s.measure_prob = measure_prob;
  return s;
}

ChannelSpec ChannelSpec::mixed_unitary(int dim, int rank, Matrix base) {
  require(rank >= 1 && rank <= dim * dim, ErrorKind::kInvalidRank,
          "mixed-unitary rank must lie in [1, d^2]");
  ChannelSpec s;
  s.kind = ChannelKind::kMixedUnitary;
  s.dim = dim;
  s.rank = rank;
  s.unitary = base.size() == 0 ? pls::identity(dim) : std::move(base);
  require(s.unitary.rows() == dim && s.unitary.cols() == dim, ErrorKind::kDimensionMismatch,
          "base unitary has wrong dimension");
  return s;
}

ChannelSpec ChannelSpec::depolarizing(int dim) {
  return mixed_unitary(dim, dim * dim, pls::identity(dim));
}

int ChannelSpec::declared_rank() const {
  switch (kind) {
    case ChannelKind::kIdentity:
    case ChannelKind::kUnitary:
      return 1;
    case ChannelKind::kNoisyQft:
      return measure_prob > 0.0 ? 2 : 1;
    case ChannelKind::kMixedUnitary:
      return rank;
  }
  return 1;
}

std::string ChannelSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case ChannelKind::kIdentity: os << "identity"; break;
    case ChannelKind::kUnitary: os << "unitary"; break;
    case ChannelKind::kNoisyQft: os << "noisy_qft(" << measure_prob << ")"; break;
    case ChannelKind::kMixedUnitary: os << "mixed_unitary(" << rank << ")"; break;
  }
  return os.str();
}

KrausSet make_channel(const ChannelSpec& spec) {
  const int d = spec.dim;
  require(d >= 1, ErrorKind::kInvalidDimension, "dimension must be positive");
  switch (spec.kind) {
    case ChannelKind::kIdentity:
      return KrausSet(d, {identity(d)});
    case ChannelKind::kUnitary:
      return KrausSet(d, {spec.unitary});
    case ChannelKind::kNoisyQft: {
      const Matrix u = qft_unitary(d);
      const double q = spec.measure_prob;
      // P0 / P1 project the first (most significant) qubit onto |0> / |1>.
      Matrix p0 = Matrix::Zero(d, d);
      Matrix p1 = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        if (i < d / 2) p0(i, i) = 1.0;
        else p1(i, i) = 1.0;
      }
      std::vector<Matrix> ops;
      ops.push_back(std::sqrt(1.0 - q) * u);
      ops.push_back(std::sqrt(q) * p0 * u);
      ops.push_back(std::sqrt(q) * p1 * u);
      return KrausSet(d, std::move(ops));
    }
    case ChannelKind::kMixedUnitary: {
      require(spec.rank >= 1 && spec.rank <= d * d, ErrorKind::kInvalidRank,
              "mixed-unitary rank must lie in [1, d^2]");
      std::vector<Matrix> ops = orthogonal_unitaries(d, spec.rank);
      const double w = 1.0 / std::sqrt(static_cast<double>(spec.rank));
      for (Matrix& op : ops) op = (spec.unitary * op) * w;
      return KrausSet(d, std::move(ops));
    }
  }
  fail(ErrorKind::kInvalidInput, "unknown channel kind");
}

}  // namespace pls
