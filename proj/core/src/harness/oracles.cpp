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

#include "pls/harness/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "pls/errors.hpp"

namespace pls::oracles {

namespace {

double real_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

// Shared Barzilai-Borwein loop. `grad` returns the (Riemannian) gradient at B,
// `retract` maps a trial point back onto the constraint manifold.
template <typename Grad, typename Retract>
Matrix bb_descent(Matrix b, const DescentOptions& opt, Grad grad, Retract retract) {
  Matrix g = grad(b);
  double step = 1e-2;
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (g.norm() < opt.gradient_tolerance) break;
    Matrix next = retract(b - step * g);
    Matrix g_next = grad(next);
    const Matrix s = next - b;
    const Matrix y = g_next - g;
    const double sy = real_inner(s, y);
    step = sy > 0.0 ? std::clamp(real_inner(s, s) / sy, 1e-8, 1e3) : 1e-2;
    b = std::move(next);
    g = std::move(g_next);
  }
  return b;
}

}  // namespace

Matrix affine_tp_projection(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  const int d = checked_sqrt_dim(n);
  // Unknowns: real and imaginary parts of every entry. Constraints: real and
  // imaginary parts of sum_i Y[(i,a),(i,b)] = delta_ab / d.
  const int vars = 2 * n * n;
  const int cons = 2 * d * d;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cons, vars);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(cons);
  auto var = [n](int r, int c) { return 2 * (r * n + c); };
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const int row = 2 * (p * d + q);
      for (int i = 0; i < d; ++i) {
        a(row, var(i * d + p, i * d + q)) = 1.0;
        a(row + 1, var(i * d + p, i * d + q) + 1) = 1.0;
      }
      rhs(row) = p == q ? 1.0 / d : 0.0;
    }
  Eigen::VectorXd v(vars);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      v(var(r, c)) = x(r, c).real();
      v(var(r, c) + 1) = x(r, c).imag();
    }
  const Eigen::VectorXd residual = a * v - rhs;
  const Eigen::MatrixXd gram = a * a.transpose();
  const Eigen::VectorXd lambda = gram.fullPivLu().solve(residual);
  const Eigen::VectorXd y = v - a.transpose() * lambda;
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = cplx(y(var(r, c)), y(var(r, c) + 1));
  return out;
}

Matrix psd_projection_descent(const Matrix& x, const DescentOptions& opt) {
  const int n = static_cast<int>(x.rows());
  const Matrix xh = hermitian_part(x);
  const double scale = std::max(xh.norm() / std::sqrt(static_cast<double>(n)), 1e-3);
  Matrix b = identity(n) * std::sqrt(scale);
  b = bb_descent(
      b, opt, [&](const Matrix& m) { return Matrix((m * m.adjoint() - xh) * m); },
      [](const Matrix& m) { return m; });
  return b * b.adjoint();
}

Matrix state_projection_descent(const Matrix& x, const DescentOptions& opt) {
  const int n = static_cast<int>(x.rows());
  const Matrix xh = hermitian_part(x);
  Matrix b = identity(n) / std::sqrt(static_cast<double>(n));
  auto grad = [&](const Matrix& m) {
    Matrix g = (m * m.adjoint() - xh) * m;
    return Matrix(g - real_inner(g, m) * m);
  };
  b = bb_descent(b, opt, grad, [](const Matrix& m) { return Matrix(m / m.norm()); });
  return b * b.adjoint();
}

std::vector<double> naive_born(const KrausSet& channel, Scenario scenario, std::int64_t context) {
  const int d = channel.dim();
  const TableLayout layout = TableLayout::of(scenario, d);
  require(context >= 0 && context < layout.contexts(), ErrorKind::kInvalidInput, "context out of range");
  const std::int64_t setting = context / layout.inputs;
  const std::int64_t input = context % layout.inputs;
  const std::vector<DensityMatrix> inputs = scenario_inputs(scenario, d);

  Matrix out_state;
  if (scenario == Scenario::kPauliAncilla || scenario == Scenario::kMubAncilla) {
    const Matrix omega = inputs.front().matrix();
    out_state = Matrix::Zero(d * d, d * d);
    for (const Matrix& k : channel.operators()) {
      const Matrix big = kron(k, identity(d));
      out_state += big * omega * big.adjoint();
    }
  } else {
    out_state = channel.apply(inputs[static_cast<std::size_t>(input)].matrix());
  }

  PauliSetting axes;
  if (scenario == Scenario::kPauliAncilla || scenario == Scenario::kPauliDirect) {
    const int k = layout.qubits;
    axes = pauli_setting_from_index(setting, scenario == Scenario::kPauliAncilla ? 2 * k : k);
  }
  const Povm povm = scenario_povm(scenario, d, axes);
  std::vector<double> probs;
  probs.reserve(povm.elements.size());
  for (const Matrix& m : povm.elements) probs.push_back((out_state * m).trace().real());
  return probs;
}

Matrix naive_pauli_ls(const FrequencyTable& table) {
  const Scenario sc = table.scenario();
  require(sc == Scenario::kPauliAncilla || sc == Scenario::kPauliDirect, ErrorKind::kScenarioMismatch,
          "naive Pauli estimator needs scenario 1 or 2");
  const int k = table.layout().qubits;
  const int n = 2 * k;
  require(n <= 6, ErrorKind::kNotImplemented, "naive Pauli estimator is limited to 3 qubits");
  const int big = 1 << n;
  const std::int64_t half = std::int64_t{1} << k;
  const std::int64_t ak = ipow(3, k);
  Matrix acc = Matrix::Zero(big, big);
  for (std::int64_t s = 0; s < ipow(3, n); ++s) {
    const PauliSetting axes = pauli_setting_from_index(s, n);
    for (std::int64_t o = 0; o < big; ++o) {
      double g = 0.0;
      if (sc == Scenario::kPauliAncilla) {
        g = table.at_context(s, o);
      } else {
        const std::int64_t b = s / ak;
        const std::int64_t a = s % ak;
        g = table.at_context(b * table.layout().inputs + a * half + o % half, o / half) / (1 << k);
      }
      if (g == 0.0) continue;
      Matrix term = Matrix::Identity(1, 1);
      for (int q = 0; q < n; ++q) {
        const int bit = static_cast<int>((o >> (n - 1 - q)) & 1);
        term = kron(term, 3.0 * outer(pauli_eigenvector(axes[static_cast<std::size_t>(q)], bit)) - identity(2));
      }
      acc += g * term;
    }
  }
  return acc / static_cast<double>(ipow(3, n));
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace pls::oracles
