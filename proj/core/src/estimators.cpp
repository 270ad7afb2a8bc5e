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

#include "pls/estimators.hpp"

#include "pls/errors.hpp"
#include "pls/pauli_transform.hpp"

namespace pls {

namespace {

void check_table(const FrequencyTable& f, Scenario expected, int dim) {
  require(f.scenario() == expected, ErrorKind::kScenarioMismatch,
          "table is from scenario " + std::to_string(to_int(f.scenario())) + ", expected " +
              std::to_string(to_int(expected)));
  require(f.dim() == dim, ErrorKind::kDimensionMismatch,
          "table dimension " + std::to_string(f.dim()) + " differs from " + std::to_string(dim));
}

LsEstimate wrap(const FrequencyTable& f, Matrix m) {
  LsEstimate e;
  e.matrix = hermitian_part(m);
  e.scenario = f.scenario();
  e.dim = f.dim();
  e.shots = f.total_shots();
  e.nu = f.nu();
  e.seed = f.seed();
  return e;
}

// (1/3^n) sum_{s,o} g^s_o tensor_i (3 P^{s_i}_{o_i} - 1) on n qubits, with g
// read through `freq(s, o)`. Each factor is 1/2 + (3/2)(-1)^o sigma_s, so the
// coefficient of the Pauli string with support T and axes s_T is
// 3^{|T|} / (3^n 2^n) summed over settings agreeing on T of WHT(g^s)[T].
template <typename Freq>
Matrix pauli_ls(int n, Freq freq) {
  const std::int64_t settings = ipow(3, n);
  const std::int64_t outcomes = std::int64_t{1} << n;
  std::vector<cplx> coeffs(static_cast<std::size_t>(ipow(4, n)), cplx(0.0));
  std::vector<std::int64_t> place(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) place[static_cast<std::size_t>(q)] = ipow(4, n - 1 - q);
  std::vector<double> g(static_cast<std::size_t>(outcomes));
  for (std::int64_t s = 0; s < settings; ++s) {
    for (std::int64_t o = 0; o < outcomes; ++o) g[static_cast<std::size_t>(o)] = freq(s, o);
    walsh_hadamard(g);
    const PauliSetting axes = pauli_setting_from_index(s, n);
    for (std::int64_t t = 0; t < outcomes; ++t) {
      std::int64_t idx = 0;
      for (int q = 0; q < n; ++q)
        if ((t >> (n - 1 - q)) & 1)
          idx += (static_cast<int>(axes[static_cast<std::size_t>(q)]) + 1) * place[static_cast<std::size_t>(q)];
      coeffs[static_cast<std::size_t>(idx)] += g[static_cast<std::size_t>(t)];
    }
  }
  std::vector<double> weight(static_cast<std::size_t>(n + 1));
  const double base = 1.0 / (static_cast<double>(settings) * static_cast<double>(outcomes));
  for (int w = 0; w <= n; ++w) weight[static_cast<std::size_t>(w)] = base * static_cast<double>(ipow(3, w));
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    int support = 0;
    for (std::size_t x = p; x != 0; x /= 4)
      if (x % 4 != 0) ++support;
    coeffs[p] *= weight[static_cast<std::size_t>(support)];
  }
  return from_pauli_coefficients(coeffs, n);
}

}  // namespace

LsEstimate ls_scenario1(const FrequencyTable& f, int qubits) {
  require(qubits >= 1, ErrorKind::kInvalidDimension, "need at least one qubit");
  check_table(f, Scenario::kPauliAncilla, 1 << qubits);
  const int n = 2 * qubits;
  return wrap(f, pauli_ls(n, [&](std::int64_t s, std::int64_t o) { return f.at_context(s, o); }));
}

LsEstimate ls_scenario2(const FrequencyTable& f, int qubits) {
  require(qubits >= 1, ErrorKind::kInvalidDimension, "need at least one qubit");
  const int d = 1 << qubits;
  check_table(f, Scenario::kPauliDirect, d);
  const std::int64_t half = std::int64_t{1} << qubits;
  const std::int64_t ak = ipow(3, qubits);
  const std::int64_t inputs = f.layout().inputs;
  const double inv_d = 1.0 / d;
  // Joint setting (b, a) on 2k qubits, outcome q * 2^k + p: measured bits on the
  // system factor, input label on the ancilla factor.
  auto freq = [&](std::int64_t s, std::int64_t o) {
    const std::int64_t b = s / ak;
    const std::int64_t a = s % ak;
    const std::int64_t q = o / half;
    const std::int64_t p = o % half;
    return f.at_context(b * inputs + a * half + p, q) * inv_d;
  };
  return wrap(f, pauli_ls(2 * qubits, freq));
}

LsEstimate ls_scenario3(const FrequencyTable& f, int dim) {
  check_table(f, Scenario::kMubAncilla, dim);
  const int big = dim * dim;
  const MubFamily fam = mub_family(big);
  Matrix acc = Matrix::Zero(big, big);
  for (std::size_t b = 0; b < fam.bases.size(); ++b) {
    RealVector w(big);
    for (int t = 0; t < big; ++t) w(t) = f.at_context(0, static_cast<std::int64_t>(b) * big + t);
    acc.noalias() += fam.bases[b] * w.asDiagonal() * fam.bases[b].adjoint();
  }
  Matrix m = acc * static_cast<double>(big + 1) - identity(big);
  return wrap(f, std::move(m));
}

LsEstimate ls_scenario4(const FrequencyTable& f, int dim) {
  check_table(f, Scenario::kMubDirect, dim);
  const MubFamily fam = mub_family(dim);
  const int m = fam.size();
  const int big = dim * dim;
  Matrix joint = Matrix::Zero(big, big);
  Matrix system = Matrix::Zero(dim, dim);
  Matrix ancilla = Matrix::Zero(dim, dim);
  for (int k = 0; k < m; ++k) {
    Matrix v = Matrix::Zero(dim, dim);
    double mass = 0.0;
    for (std::size_t b = 0; b < fam.bases.size(); ++b) {
      RealVector w(dim);
      for (int t = 0; t < dim; ++t) w(t) = f.at_context(k, static_cast<std::int64_t>(b) * dim + t);
      mass += w.sum();
      v.noalias() += fam.bases[b] * w.asDiagonal() * fam.bases[b].adjoint();
    }
    const Matrix wk = outer(fam.vector(k));
    joint += kron(v, wk);
    system += v;
    ancilla += mass * wk;
  }
  const double dd = dim;
  Matrix out = joint * ((dd + 1.0) / dd) - (kron(system, identity(dim)) + kron(identity(dim), ancilla)) / dd +
               identity(big);
  return wrap(f, std::move(out));
}

LsEstimate least_squares(const FrequencyTable& f) {
  switch (f.scenario()) {
    case Scenario::kPauliAncilla:
      return ls_scenario1(f, f.layout().qubits);
    case Scenario::kPauliDirect:
      return ls_scenario2(f, f.layout().qubits);
    case Scenario::kMubAncilla:
      return ls_scenario3(f, f.dim());
    case Scenario::kMubDirect:
      return ls_scenario4(f, f.dim());
  }
  fail(ErrorKind::kInvalidInput, "unknown scenario");
}

}  // namespace pls
