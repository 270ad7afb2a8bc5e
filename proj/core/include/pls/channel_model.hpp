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

// Channels as Kraus sets and Choi matrices.
//
// Tensor convention used everywhere in the library: a vector on C^d (x) C^d
// has index i*d + j for |i>|j>, the first factor is the system (the channel
// acts on it) and the second is the ancilla. The Choi matrix of C is
// (C (x) id)(Omega) with Omega the maximally entangled state, so
// Tr_s(Phi) = 1/d for trace-preserving C.

#include <cstdint>
#include <string>
#include <vector>

#include "pls/linalg.hpp"

namespace pls {

/// A validated quantum state.
class DensityMatrix {
 public:
  /// Checks Hermiticity, unit trace and positivity; throws
  /// kConstraintViolation otherwise.
  explicit DensityMatrix(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int dim);

 private:
  Matrix entries_;
};

/// Trace-preserving Kraus representation; validated on construction.
class KrausSet {
 public:
  KrausSet(int dim, std::vector<Matrix> operators);

  int dim() const { return dim_; }
  const std::vector<Matrix>& operators() const { return operators_; }

  /// sum_i K_i rho K_i^*.
  Matrix apply(const Matrix& rho) const;

  /// Dimension of the span of the vectorised operators.
  int rank() const;

 private:
  int dim_;
  std::vector<Matrix> operators_;
};

/// d^2 x d^2 Hermitian trace-one matrix. Physicality (PSD plus
/// Tr_s = 1/d) is checked on demand rather than enforced, since LS estimates
/// and intermediate projections are also carried as Choi matrices.
class ChoiMatrix {
 public:
  ChoiMatrix(int dim, Matrix entries);

  int dim() const { return dim_; }
  const Matrix& matrix() const { return entries_; }

  bool is_physical(double tol = 1e-10) const;
  int numerical_rank(double tol = 1e-9) const;

 private:
  int dim_;
  Matrix entries_;
};

enum class ChannelKind { kIdentity, kUnitary, kNoisyQft, kMixedUnitary };

/// Ground-truth channel description.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kIdentity;
  int dim = 2;
  Matrix unitary;             // kUnitary: U; kMixedUnitary: base unitary W
  double measure_prob = 0.0;  // kNoisyQft
  int rank = 1;               // kMixedUnitary

  static ChannelSpec identity(int dim);
  static ChannelSpec unitary_channel(Matrix u);
  static ChannelSpec random_unitary(int dim, std::uint64_t seed);
  static ChannelSpec noisy_qft(int dim, double measure_prob);
  static ChannelSpec mixed_unitary(int dim, int rank, Matrix base);
  /// Completely depolarising channel: mixed_unitary of full rank d^2 with
  /// base identity.
  static ChannelSpec depolarizing(int dim);

  /// Kraus rank the construction guarantees.
  int declared_rank() const;
  /// Short human-readable label used in CSV output.
  std::string label() const;
};

enum class PartialTraceOver { kSystem, kAncilla };

enum class Metric { kFrobenius, kTrace, kOperator };

/// Projector onto (1/sqrt d) sum_q |q>|q>.
DensityMatrix maximally_entangled_state(int dim);

ChoiMatrix choi_from_kraus(const KrausSet& kraus);

/// C(rho) = d Tr_a(Phi (1 (x) rho^T)).
DensityMatrix apply_via_choi(const ChoiMatrix& choi, const DensityMatrix& rho);

/// Unchecked core of apply_via_choi for arbitrary matrices.
Matrix apply_choi_map(const Matrix& choi, const Matrix& rho);

/// Partial trace of a d^2 x d^2 matrix; kSystem contracts the first factor.
Matrix partial_trace(const Matrix& m, int dim, PartialTraceOver which);

double distance(const Matrix& a, const Matrix& b, Metric metric);

/// (Tr sqrt(sqrt(A) B sqrt(A)))^2 for PSD A, B.
double fidelity(const Matrix& a, const Matrix& b);

KrausSet make_channel(const ChannelSpec& spec);

/// d x d discrete Fourier transform, U_{jk} = omega^{jk} / sqrt d.
Matrix qft_unitary(int dim);

/// The first `count` Hilbert-Schmidt orthogonal unitaries used by
/// mixed-unitary channels: Pauli strings in lexicographic {I,X,Y,Z}^k order
/// when d = 2^k, otherwise Weyl-Heisenberg operators X^a Z^b in (a, b)
/// lexicographic order.
std::vector<Matrix> orthogonal_unitaries(int dim, int count);

}  // namespace pls
