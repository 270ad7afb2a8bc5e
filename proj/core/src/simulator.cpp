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

#include "pls/simulator.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pls/errors.hpp"
#include "pls/pauli_transform.hpp"
#include "pls/rng.hpp"

namespace pls {

TableLayout TableLayout::of(Scenario scenario, int dim) {
  TableLayout t;
  t.scenario = scenario;
  t.dim = dim;
  require(dim >= 2, ErrorKind::kInvalidDimension, "channel dimension must be at least 2");
  int k = 0;
  const bool binary = is_power_of_two(dim, &k);
  t.qubits = binary ? k : 0;
  switch (scenario) {
    case Scenario::kPauliAncilla:
      require(binary, ErrorKind::kInvalidDimension, "scenario 1 needs d = 2^k");
      require(k <= 4, ErrorKind::kNotImplemented, "scenario 1 supports at most 4 qubits");
      t.settings = ipow(3, 2 * k);
      t.inputs = 1;
      t.outcomes = std::int64_t{1} << (2 * k);
      break;
    case Scenario::kPauliDirect:
      require(binary, ErrorKind::kInvalidDimension, "scenario 2 needs d = 2^k");
      require(k <= 4, ErrorKind::kNotImplemented, "scenario 2 supports at most 4 qubits");
      t.settings = ipow(3, k);
      t.inputs = ipow(6, k);
      t.outcomes = std::int64_t{1} << k;
      break;
    case Scenario::kMubAncilla:
      require(mub_supported(dim * dim), ErrorKind::kNotImplemented,
              "no MUB family for D = d^2 = " + std::to_string(dim * dim));
      t.settings = 1;
      t.inputs = 1;
      t.outcomes = static_cast<std::int64_t>(dim) * dim * (dim * dim + 1);
      break;
    case Scenario::kMubDirect:
      require(mub_supported(dim), ErrorKind::kNotImplemented,
              "no MUB family for d = " + std::to_string(dim));
      t.settings = 1;
      t.inputs = static_cast<std::int64_t>(dim) * (dim + 1);
      t.outcomes = static_cast<std::int64_t>(dim) * (dim + 1);
      break;
  }
  return t;
}

FrequencyTable::FrequencyTable(TableLayout layout, std::vector<double> values, double nu,
                               std::int64_t total_shots, std::uint64_t seed,
                               SamplingScheme scheme)
    : layout_(layout),
      values_(std::move(values)),
      nu_(nu),
      total_shots_(total_shots),
      seed_(seed),
      scheme_(scheme) {
  require(static_cast<std::int64_t>(values_.size()) == layout_.size(),
          ErrorKind::kDimensionMismatch, "table size does not match its layout");
  require(nu_ > 0.0, ErrorKind::kInvalidInput, "nu must be positive");
  for (double v : values_)
    require(v >= 0.0, ErrorKind::kInvalidInput, "frequencies must be nonnegative");
}

double FrequencyTable::at(std::int64_t setting, std::int64_t input, std::int64_t outcome) const {
  require(setting >= 0 && setting < layout_.settings && input >= 0 && input < layout_.inputs &&
              outcome >= 0 && outcome < layout_.outcomes,
          ErrorKind::kInvalidInput, "table key out of range");
  return at_context(setting * layout_.inputs + input, outcome);
}

void FrequencyTable::write(std::ostream& os) const {
  char buf[128];
  os << "# pls-frequency-table v1\n";
  std::snprintf(buf, sizeof buf, "%.17g", nu_);
  os << "# scenario=" << to_int(layout_.scenario) << " dim=" << layout_.dim
     << " qubits=" << layout_.qubits << " N=" << total_shots_ << " nu=" << buf
     << " seed=" << seed_ << " scheme=" << (scheme_ == SamplingScheme::kFixed ? "fixed" : "random")
     << "\n";
  os << "setting,input,outcome,frequency\n";
  for (std::int64_t c = 0; c < layout_.contexts(); ++c)
    for (std::int64_t o = 0; o < layout_.outcomes; ++o) {
      const double v = at_context(c, o);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%" PRId64 ",%" PRId64 ",%" PRId64 ",%.17g\n",
                    c / layout_.inputs, c % layout_.inputs, o, v);
      os << buf;
    }
}

FrequencyTable FrequencyTable::read(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line == "# pls-frequency-table v1",
          ErrorKind::kIo, "missing frequency-table magic line");
  require(static_cast<bool>(std::getline(is, line)) && line.rfind("# ", 0) == 0, ErrorKind::kIo,
          "missing frequency-table metadata line");
  int scenario = 0;
  int dim = 0;
  std::int64_t shots = 0;
  double nu = 1.0;
  std::uint64_t seed = 0;
  std::string scheme = "random";
  std::istringstream meta(line.substr(2));
  std::string field;
  while (meta >> field) {
    const auto eq = field.find('=');
    require(eq != std::string::npos, ErrorKind::kIo, "malformed metadata field " + field);
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    try {
      if (key == "scenario") scenario = std::stoi(val);
      else if (key == "dim") dim = std::stoi(val);
      else if (key == "N") shots = std::stoll(val);
      else if (key == "nu") nu = std::stod(val);
      else if (key == "seed") seed = std::stoull(val);
      else if (key == "scheme") scheme = val;
    } catch (const std::exception&) {
      fail(ErrorKind::kIo, "bad value for " + key);
    }
  }
  require(scheme == "fixed" || scheme == "random", ErrorKind::kIo, "unknown scheme " + scheme);
  const TableLayout layout = TableLayout::of(scenario_from_int(scenario), dim);
  require(static_cast<bool>(std::getline(is, line)) && line == "setting,input,outcome,frequency",
          ErrorKind::kIo, "missing column header");
  std::vector<double> values(static_cast<std::size_t>(layout.size()), 0.0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::int64_t s = 0;
    std::int64_t in = 0;
    std::int64_t o = 0;
    double v = 0.0;
    require(std::sscanf(line.c_str(), "%" SCNd64 ",%" SCNd64 ",%" SCNd64 ",%lf", &s, &in, &o, &v) == 4,
            ErrorKind::kIo, "malformed row: " + line);
    require(s >= 0 && s < layout.settings && in >= 0 && in < layout.inputs && o >= 0 &&
                o < layout.outcomes,
            ErrorKind::kIo, "row key out of range: " + line);
    values[static_cast<std::size_t>((s * layout.inputs + in) * layout.outcomes + o)] = v;
  }
  return FrequencyTable(layout, std::move(values), nu, shots,
                        seed, scheme == "fixed" ? SamplingScheme::kFixed : SamplingScheme::kRandom);
}

namespace {

void check_physical(const ChoiMatrix& choi) {
  require(choi.is_physical(1e-8), ErrorKind::kConstraintViolation,
          "Born probabilities need a physical Choi matrix");
}

void clamp_and_normalise(double* p, std::int64_t n) {
  double total = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (p[i] < 0.0) p[i] = 0.0;
    total += p[i];
  }
  if (total > 0.0)
    for (std::int64_t i = 0; i < n; ++i) p[i] /= total;
}

// Probabilities of all 3^n Pauli settings on n qubits for a unit-trace matrix,
// setting-major, via Pauli expectations and one Walsh-Hadamard transform per
// setting.
std::vector<double> pauli_setting_probabilities(const Matrix& m, int n) {
  const std::vector<cplx> e = pauli_expectations(m, n);
  const std::int64_t settings = ipow(3, n);
  const std::int64_t outcomes = std::int64_t{1} << n;
  std::vector<double> out(static_cast<std::size_t>(settings * outcomes));
  std::vector<std::int64_t> place(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) place[static_cast<std::size_t>(q)] = ipow(4, n - 1 - q);
  std::vector<double> g(static_cast<std::size_t>(outcomes));
  const double scale = 1.0 / static_cast<double>(outcomes);
  for (std::int64_t s = 0; s < settings; ++s) {
    const PauliSetting axes = pauli_setting_from_index(s, n);
    for (std::int64_t t = 0; t < outcomes; ++t) {
      std::int64_t idx = 0;
      for (int q = 0; q < n; ++q)
        if ((t >> (n - 1 - q)) & 1)
          idx += (static_cast<int>(axes[static_cast<std::size_t>(q)]) + 1) * place[static_cast<std::size_t>(q)];
      g[static_cast<std::size_t>(t)] = e[static_cast<std::size_t>(idx)].real();
    }
    walsh_hadamard(g);
    for (std::int64_t o = 0; o < outcomes; ++o)
      out[static_cast<std::size_t>(s * outcomes + o)] = g[static_cast<std::size_t>(o)] * scale;
  }
  return out;
}

std::vector<double> mub_ancilla_probabilities(const Matrix& phi, int dim) {
  const int big = dim * dim;
  const MubFamily fam = mub_family(big);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(fam.size()));
  const double w = 1.0 / (big + 1);
  for (const Matrix& b : fam.bases) {
    const Matrix rotated = b.adjoint() * phi * b;
    for (int t = 0; t < big; ++t) out.push_back(rotated(t, t).real() * w);
  }
  return out;
}

std::vector<double> mub_direct_probabilities(const Matrix& phi, int dim) {
  const MubFamily fam = mub_family(dim);
  const int m = fam.size();
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  const double w = static_cast<double>(dim) / (dim + 1);
  for (int k = 0; k < m; ++k) {
    const Vector wk = fam.vector(k);
    // <w_k| on the ancilla: reduced(i, i') = sum_{j, j'} conj(w_j) Phi(i d + j, i' d + j') w_j'.
    Matrix reduced = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int ip = 0; ip < dim; ++ip)
        reduced(i, ip) = (wk.adjoint() * phi.block(i * dim, ip * dim, dim, dim) * wk)(0, 0);
    for (std::size_t b = 0; b < fam.bases.size(); ++b) {
      const Matrix rotated = fam.bases[b].adjoint() * reduced * fam.bases[b];
      for (int t = 0; t < dim; ++t)
        out[static_cast<std::size_t>(k) * m + b * dim + t] = rotated(t, t).real() * w;
    }
  }
  return out;
}

std::vector<double> raw_probabilities(const Matrix& phi, const TableLayout& layout) {
  switch (layout.scenario) {
    case Scenario::kPauliAncilla:
      return pauli_setting_probabilities(phi, 2 * layout.qubits);
    case Scenario::kPauliDirect: {
      const int k = layout.qubits;
      const std::vector<double> joint = pauli_setting_probabilities(phi, 2 * k);
      const std::int64_t half = std::int64_t{1} << k;
      const std::int64_t ak = ipow(3, k);
      std::vector<double> out(static_cast<std::size_t>(layout.size()));
      const double d = layout.dim;
      for (std::int64_t b = 0; b < ak; ++b)
        for (std::int64_t a = 0; a < ak; ++a)
          for (std::int64_t p = 0; p < half; ++p) {
            const std::int64_t context = b * layout.inputs + a * half + p;
            const std::int64_t joint_setting = b * ak + a;
            for (std::int64_t q = 0; q < half; ++q)
              out[static_cast<std::size_t>(context * half + q)] =
                  d * joint[static_cast<std::size_t>(joint_setting * half * half + q * half + p)];
          }
      return out;
    }
    case Scenario::kMubAncilla:
      return mub_ancilla_probabilities(phi, layout.dim);
    case Scenario::kMubDirect:
      return mub_direct_probabilities(phi, layout.dim);
  }
  fail(ErrorKind::kInvalidInput, "unknown scenario");
}

}  // namespace

std::vector<double> all_born_probabilities(const ChoiMatrix& choi, Scenario scenario) {
  check_physical(choi);
  const TableLayout layout = TableLayout::of(scenario, choi.dim());
  std::vector<double> p = raw_probabilities(choi.matrix(), layout);
  if (scenario == Scenario::kMubAncilla) {
    clamp_and_normalise(p.data(), layout.outcomes);
  } else {
    for (std::int64_t c = 0; c < layout.contexts(); ++c)
      clamp_and_normalise(p.data() + c * layout.outcomes, layout.outcomes);
  }
  return p;
}

std::vector<double> born_probabilities(const ChoiMatrix& choi, Scenario scenario,
                                       std::int64_t context) {
  const TableLayout layout = TableLayout::of(scenario, choi.dim());
  require(context >= 0 && context < layout.contexts(), ErrorKind::kInvalidInput,
          "context index out of range");
  const std::vector<double> all = all_born_probabilities(choi, scenario);
  const auto first = all.begin() + context * layout.outcomes;
  return {first, first + layout.outcomes};
}

FrequencyTable exact_table(const ChoiMatrix& choi, Scenario scenario) {
  const TableLayout layout = TableLayout::of(scenario, choi.dim());
  return FrequencyTable(layout, all_born_probabilities(choi, scenario), 1.0, 0, 0,
                        SamplingScheme::kFixed);
}

FrequencyTable sample(const ChoiMatrix& choi, Scenario scenario, const SamplingPlan& plan) {
  const TableLayout layout = TableLayout::of(scenario, choi.dim());
  require(plan.shots >= 1, ErrorKind::kInvalidPlan, "at least one shot is required");
  const std::int64_t contexts = layout.contexts();
  const std::vector<double> probs = all_born_probabilities(choi, scenario);
  std::vector<double> values(probs.size(), 0.0);
  const double nu = static_cast<double>(plan.shots) / static_cast<double>(contexts);
  if (plan.scheme == SamplingScheme::kFixed) {
    require(plan.shots % contexts == 0, ErrorKind::kInvalidPlan,
            "fixed scheme needs N divisible by " + std::to_string(contexts));
    const std::int64_t per = plan.shots / contexts;
    for (std::int64_t c = 0; c < contexts; ++c) {
      Rng rng = make_rng(plan.seed, {static_cast<std::uint64_t>(c)});
      const std::span<const double> pc(probs.data() + c * layout.outcomes,
                                       static_cast<std::size_t>(layout.outcomes));
      const std::vector<std::int64_t> counts = multinomial(rng, per, pc);
      for (std::int64_t o = 0; o < layout.outcomes; ++o)
        values[static_cast<std::size_t>(c * layout.outcomes + o)] =
            static_cast<double>(counts[static_cast<std::size_t>(o)]) / nu;
    }
  } else {
    std::vector<double> joint(probs.size());
    const double w = 1.0 / static_cast<double>(contexts);
    for (std::size_t i = 0; i < probs.size(); ++i) joint[i] = probs[i] * w;
    Rng rng = make_rng(plan.seed, {0x72616e64ULL});
    const std::vector<std::int64_t> counts = multinomial(rng, plan.shots, joint);
    for (std::size_t i = 0; i < counts.size(); ++i) values[i] = static_cast<double>(counts[i]) / nu;
  }
  return FrequencyTable(layout, std::move(values), nu, plan.shots, plan.seed, plan.scheme);
}

}  // namespace pls
