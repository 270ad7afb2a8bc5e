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

#include "pls/designs.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "pls/errors.hpp"
#include "pls/rng.hpp"

namespace pls {

Scenario scenario_from_int(int s) {
  require(s >= 1 && s <= 4, ErrorKind::kInvalidInput,
          "scenario must be 1, 2, 3 or 4, got " + std::to_string(s));
  return static_cast<Scenario>(s);
}

int to_int(Scenario s) { return static_cast<int>(s); }

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Vector pauli_eigenvector(PauliAxis axis, int outcome) {
  require(outcome == 0 || outcome == 1, ErrorKind::kInvalidInput, "outcome bit must be 0 or 1");
  const double h = 1.0 / std::numbers::sqrt2;
  const double sign = outcome == 0 ? 1.0 : -1.0;
  Vector v(2);
  switch (axis) {
    case PauliAxis::kZ:
      v << (outcome == 0 ? 1.0 : 0.0), (outcome == 0 ? 0.0 : 1.0);
      break;
    case PauliAxis::kX:
      v << h, sign * h;
      break;
    case PauliAxis::kY:
      v << h, cplx(0.0, sign * h);
      break;
  }
  return v;
}

Matrix pauli_projector(const PauliSetting& setting, const std::vector<int>& outcome) {
  require(setting.size() == outcome.size(), ErrorKind::kInvalidInput,
          "setting and outcome lengths differ");
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < setting.size(); ++i)
    m = kron(m, outer(pauli_eigenvector(setting[i], outcome[i])));
  return m;
}

PauliSetting pauli_setting_from_index(std::int64_t index, int qubits) {
  require(qubits >= 0 && index >= 0 && index < ipow(3, qubits), ErrorKind::kInvalidInput,
          "setting index out of range");
  PauliSetting s(static_cast<std::size_t>(qubits));
  for (int q = qubits - 1; q >= 0; --q) {
    s[static_cast<std::size_t>(q)] = static_cast<PauliAxis>(index % 3);
    index /= 3;
  }
  return s;
}

std::int64_t pauli_setting_index(const PauliSetting& setting) {
  std::int64_t idx = 0;
  for (PauliAxis a : setting) idx = idx * 3 + static_cast<int>(a);
  return idx;
}

int MubFamily::size() const { return static_cast<int>(bases.size()) * dim; }

Vector MubFamily::vector(int idx) const {
  require(idx >= 0 && idx < size(), ErrorKind::kInvalidInput, "MUB vector index out of range");
  return bases[static_cast<std::size_t>(idx / dim)].col(idx % dim);
}

namespace {

// Reduction polynomials including the leading term, indexed by m.
constexpr std::array<unsigned, 9> kGfPoly = {0u,     0b11u,     0b111u,     0b1011u,     0b10011u,
                                             0b100101u, 0b1000011u, 0b10000011u, 0b100011011u};

unsigned gf_mul(unsigned a, unsigned b, int m) {
  unsigned out = 0;
  while (b != 0) {
    if (b & 1u) out ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << m)) a ^= kGfPoly[static_cast<std::size_t>(m)];
  }
  return out;
}

// Absolute trace a + a^2 + ... + a^{2^{m-1}}; always 0 or 1.
unsigned gf_trace(unsigned a, int m) {
  unsigned acc = 0;
  unsigned p = a;
  for (int i = 0; i < m; ++i) {
    acc ^= p;
    p = gf_mul(p, p, m);
  }
  return acc & 1u;
}

MubFamily binary_mubs(int dim, int m) {
  MubFamily f;
  f.dim = dim;
  f.bases.push_back(identity(dim));
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  static constexpr std::array<cplx, 4> kIPow = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (int j = 0; j < dim; ++j) {
    std::vector<int> form(static_cast<std::size_t>(m * m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        form[static_cast<std::size_t>(a * m + b)] = static_cast<int>(
            gf_trace(gf_mul(static_cast<unsigned>(j), gf_mul(1u << a, 1u << b, m), m), m));
    Matrix basis(dim, dim);
    for (int x = 0; x < dim; ++x) {
      int quad = 0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          quad += ((x >> a) & 1) * ((x >> b) & 1) * form[static_cast<std::size_t>(a * m + b)];
      for (int t = 0; t < dim; ++t) {
        const int parity = __builtin_popcount(static_cast<unsigned>(t & x)) & 1;
        basis(x, t) = kIPow[static_cast<std::size_t>((quad + 2 * parity) % 4)] * norm;
      }
    }
    f.bases.push_back(std::move(basis));
  }
  return f;
}

MubFamily prime_mubs(int dim) {
  MubFamily f;
  f.dim = dim;
  f.bases.push_back(identity(dim));
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    Matrix basis(dim, dim);
    for (int l = 0; l < dim; ++l)
      for (int t = 0; t < dim; ++t) {
        const long long e = (static_cast<long long>(j) * l * l + static_cast<long long>(t) * l) % dim;
        basis(l, t) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(e) / dim);
      }
    f.bases.push_back(std::move(basis));
  }
  return f;
}

}  // namespace

bool mub_supported(int dim) {
  int m = 0;
  if (is_power_of_two(dim, &m)) return m >= 1 && m <= 8;
  return dim > 2 && is_prime(dim);
}

MubFamily mub_family(int dim) {
  require(mub_supported(dim), ErrorKind::kNotImplemented,
          "no MUB family for dimension " + std::to_string(dim) +
              "; supported: odd primes and 2^m with 1 <= m <= 8");
  int m = 0;
  if (is_power_of_two(dim, &m)) return binary_mubs(dim, m);
  return prime_mubs(dim);
}

double near_isotropy_defect(const MubFamily& family, std::uint64_t seed) {
  const int n = family.dim;
  std::vector<Matrix> probes;
  probes.push_back(identity(n));
  Matrix e0 = Matrix::Zero(n, n);
  e0(0, 0) = 1.0;
  probes.push_back(e0);
  for (std::uint64_t i = 0; i < 20; ++i) probes.push_back(random_hermitian(n, derive_seed(seed, {i})));

  double worst = 0.0;
  for (const Matrix& a : probes) {
    Matrix lhs = Matrix::Zero(n, n);
    for (const Matrix& b : family.bases) {
      const Vector weights = (b.adjoint() * a * b).diagonal();
      lhs.noalias() += b * weights.asDiagonal() * b.adjoint();
    }
    const Matrix rhs = a + a.trace() * identity(n);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

std::string bit_label(std::int64_t bits, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    if ((bits >> (width - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

int channel_qubits(int dim) {
  int k = 0;
  require(is_power_of_two(dim, &k) && k >= 1, ErrorKind::kInvalidDimension,
          "Pauli scenarios need d = 2^k, got " + std::to_string(dim));
  return k;
}

}  // namespace

Povm scenario_povm(Scenario scenario, int dim, const PauliSetting& setting) {
  Povm povm;
  switch (scenario) {
    case Scenario::kPauliAncilla:
    case Scenario::kPauliDirect: {
      const int k = channel_qubits(dim);
      const int n = scenario == Scenario::kPauliAncilla ? 2 * k : k;
      require(static_cast<int>(setting.size()) == n, ErrorKind::kInvalidInput,
              "setting must have " + std::to_string(n) + " axes");
      for (std::int64_t o = 0; o < (std::int64_t{1} << n); ++o) {
        std::vector<int> bits(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = static_cast<int>((o >> (n - 1 - i)) & 1);
        povm.elements.push_back(pauli_projector(setting, bits));
        povm.labels.push_back(bit_label(o, n));
      }
      return povm;
    }
    case Scenario::kMubAncilla:
    case Scenario::kMubDirect: {
      const int big = scenario == Scenario::kMubAncilla ? dim * dim : dim;
      const MubFamily fam = mub_family(big);
      const double w = 1.0 / (big + 1);
      for (int i = 0; i < fam.size(); ++i) {
        povm.elements.push_back(outer(fam.vector(i)) * w);
        povm.labels.push_back(std::to_string(i / big) + ":" + std::to_string(i % big));
      }
      return povm;
    }
  }
  fail(ErrorKind::kInvalidInput, "unknown scenario");
}

std::vector<DensityMatrix> scenario_inputs(Scenario scenario, int dim) {
  std::vector<DensityMatrix> out;
  switch (scenario) {
    case Scenario::kPauliAncilla:
    case Scenario::kMubAncilla:
      out.push_back(maximally_entangled_state(dim));
      return out;
    case Scenario::kPauliDirect: {
      const int k = channel_qubits(dim);
      for (std::int64_t a = 0; a < ipow(3, k); ++a) {
        const PauliSetting s = pauli_setting_from_index(a, k);
        for (std::int64_t p = 0; p < (std::int64_t{1} << k); ++p) {
          std::vector<int> bits(static_cast<std::size_t>(k));
          for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(i)] = static_cast<int>((p >> (k - 1 - i)) & 1);
          out.emplace_back(Matrix(pauli_projector(s, bits).transpose()));
        }
      }
      return out;
    }
    case Scenario::kMubDirect: {
      const MubFamily fam = mub_family(dim);
      for (int i = 0; i < fam.size(); ++i) out.emplace_back(Matrix(outer(fam.vector(i)).transpose()));
      return out;
    }
  }
  fail(ErrorKind::kInvalidInput, "unknown scenario");
}

}  // namespace pls
