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

#include "pls/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "pls/bounds.hpp"
#include "pls/errors.hpp"
#include "pls/estimators.hpp"
#include "pls/harness/experiments.hpp"
#include "pls/harness/oracles.hpp"
#include "pls/rng.hpp"

namespace pls::harness {

namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string num(double v) { return fmt("%.6g", v); }

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured >= threshold, measured, threshold, std::move(detail)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ChoiMatrix truth_of(const ChannelSpec& spec) { return choi_from_kraus(make_channel(spec)); }

// Trials at one sweep point, run on the worker pool in canonical order.
std::vector<TrialResult> trials(const ChoiMatrix& truth, TrialSpec base, int reps, std::uint64_t root,
                                int threads) {
  std::vector<std::optional<TrialResult>> slots(static_cast<std::size_t>(reps));
  parallel_for(reps, threads, [&](int r) {
    TrialSpec spec = base;
    spec.seed = derive_seed(root, {static_cast<std::uint64_t>(r)});
    slots[static_cast<std::size_t>(r)] = run_trial(truth, spec);
  });
  std::vector<TrialResult> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<double> pls_trace_errors(const std::vector<TrialResult>& ts, const ChoiMatrix& truth) {
  std::vector<double> e;
  for (const TrialResult& t : ts) e.push_back(distance(t.pls.estimate.matrix(), truth.matrix(), Metric::kTrace));
  return e;
}

std::vector<double> ls_trace_errors(const std::vector<TrialResult>& ts, const ChoiMatrix& truth) {
  std::vector<double> e;
  for (const TrialResult& t : ts) e.push_back(distance(t.ls, truth.matrix(), Metric::kTrace));
  return e;
}

// ---------------------------------------------------------------------------

SuiteReport identifiability(const VerifyOptions& opt) {
  SuiteReport rep{"identifiability", {}};
  struct Case {
    Scenario scenario;
    int dim;
  };
  const std::vector<Case> cases = {{Scenario::kPauliAncilla, 2}, {Scenario::kPauliAncilla, 4},
                                   {Scenario::kPauliDirect, 2},  {Scenario::kPauliDirect, 4},
                                   {Scenario::kMubAncilla, 2},   {Scenario::kMubAncilla, 4},
                                   {Scenario::kMubDirect, 2},    {Scenario::kMubDirect, 3}};
  for (const Case& c : cases) {
    std::vector<std::pair<std::string, ChannelSpec>> channels = {
        {"identity", ChannelSpec::identity(c.dim)},
        {"haar", ChannelSpec::random_unitary(c.dim, derive_seed(opt.seed, {1, static_cast<std::uint64_t>(c.dim)}))},
        {"mixed_unitary(2)", ChannelSpec::mixed_unitary(c.dim, 2, qft_unitary(c.dim))},
        {"depolarizing", ChannelSpec::depolarizing(c.dim)}};
    if (c.dim % 2 == 0) channels.push_back({"noisy_qft(0.25)", ChannelSpec::noisy_qft(c.dim, 0.25)});
    for (const auto& [label, spec] : channels) {
      const ChoiMatrix truth = truth_of(spec);
      const LsEstimate ls = least_squares(exact_table(truth, c.scenario));
      rep.checks.push_back(at_most("scenario" + std::to_string(to_int(c.scenario)) + "/d=" +
                                       std::to_string(c.dim) + "/" + label,
                                   distance(ls.matrix, truth.matrix(), Metric::kFrobenius), 1e-9));
    }
  }
  return rep;
}

SuiteReport isotropy(const VerifyOptions& opt) {
  SuiteReport rep{"isotropy", {}};
  for (int dim : {2, 3, 4, 5, 7, 8, 16})
    rep.checks.push_back(at_most("D=" + std::to_string(dim), near_isotropy_defect(mub_family(dim), opt.seed), 1e-10));
  return rep;
}

SuiteReport projection_oracles(const VerifyOptions& opt) {
  SuiteReport rep{"projection_oracles", {}};
  for (int n : {4, 16}) {
    double tp = 0.0;
    double cp = 0.0;
    double cp1 = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const Matrix x = random_hermitian(n, derive_seed(opt.seed, {3, static_cast<std::uint64_t>(n), i}));
      tp = std::max(tp, (proj_tp(x) - oracles::affine_tp_projection(x)).norm());
      cp = std::max(cp, (proj_cp(x) - oracles::psd_projection_descent(x)).norm());
      const Matrix unit = x - ((x.trace().real() - 1.0) / n) * identity(n);
      cp1 = std::max(cp1, (proj_cp1_thresholded(unit, 0.0) - oracles::state_projection_descent(unit)).norm());
    }
    const std::string tag = std::to_string(n) + "x" + std::to_string(n);
    rep.checks.push_back(at_most("proj_tp/" + tag, tp, 1e-6, "max Frobenius gap over 50 inputs"));
    rep.checks.push_back(at_most("proj_cp/" + tag, cp, 1e-6, "max Frobenius gap over 50 inputs"));
    rep.checks.push_back(at_most("proj_cp1_thresholded/" + tag, cp1, 1e-6, "tau = 0, unit-trace inputs"));
  }
  return rep;
}

SuiteReport properties(const VerifyOptions& opt) {
  SuiteReport rep{"properties", {}};
  struct Case {
    Scenario scenario;
    int dim;
  };
  const std::vector<Case> cases = {{Scenario::kPauliAncilla, 2}, {Scenario::kPauliAncilla, 4},
                                   {Scenario::kPauliDirect, 2},  {Scenario::kPauliDirect, 4},
                                   {Scenario::kMubAncilla, 2},   {Scenario::kMubAncilla, 4},
                                   {Scenario::kMubDirect, 2},    {Scenario::kMubDirect, 4}};
  constexpr int kRunsPerCase = 25;
  const int total = static_cast<int>(cases.size()) * kRunsPerCase;
  struct Outcome {
    bool p2 = true;
    bool p3 = true;
    double p2_margin = 0.0;
    double p3_margin = -INFINITY;
    int iterates = 0;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(total));
  parallel_for(total, opt.threads, [&](int i) {
    const Case& c = cases[static_cast<std::size_t>(i / kRunsPerCase)];
    const std::uint64_t s = derive_seed(opt.seed, {4, static_cast<std::uint64_t>(i)});
    // Alternate pure and noisy channels so both CP1 regimes occur.
    const ChannelSpec spec = i % 2 == 0 ? ChannelSpec::random_unitary(c.dim, s)
                                        : ChannelSpec::mixed_unitary(c.dim, 2, haar_unitary(c.dim, s));
    const ChoiMatrix truth = truth_of(spec);
    const Matrix& phi = truth.matrix();
    const LsEstimate ls = least_squares(sample(truth, c.scenario, {SamplingScheme::kRandom, 10000, s}));
    Outcome& o = outcomes[static_cast<std::size_t>(i)];
    ProjectionConfig cfg;
    double cp1_dist = 0.0;
    cfg.observer = [&](const Matrix& it) {
      ++o.iterates;
      const double margin = (it - phi).norm() - cp1_dist;
      o.p3_margin = std::max(o.p3_margin, margin);
      if (margin > 1e-10) o.p3 = false;
    };
    // The observer needs ||CP1 - Phi|| first; CP1 is deterministic in LS.
    const Matrix x = hermitian_part(ls.matrix);
    cp1_dist = (proj_cp1_thresholded(x, std::max(0.0, -min_eigenvalue(x))) - phi).norm();
    const PlsResult pls = pls_pipeline(ls, ProjectionMethod::kHIPSwitch, cfg);
    const double lhs = distance(pls.cp1, phi, Metric::kOperator);
    const double rhs = 2.0 * distance(ls.matrix, phi, Metric::kOperator);
    o.p2_margin = lhs - rhs;
    o.p2 = lhs <= rhs + 1e-12;
  });
  int v2 = 0;
  int v3 = 0;
  long iterates = 0;
  double worst2 = -INFINITY;
  double worst3 = -INFINITY;
  for (const Outcome& o : outcomes) {
    v2 += o.p2 ? 0 : 1;
    v3 += o.p3 ? 0 : 1;
    iterates += o.iterates;
    worst2 = std::max(worst2, o.p2_margin);
    worst3 = std::max(worst3, o.p3_margin);
  }
  rep.checks.push_back(at_most("property2_violations", v2, 0,
                               std::to_string(total) + " runs; worst ||CP1-Phi||_op - 2||LS-Phi||_op = " + num(worst2)));
  rep.checks.push_back(at_most("property3_violations", v3, 0,
                               std::to_string(total) + " runs, " + std::to_string(iterates) +
                                   " TP iterates; worst ||X_n-Phi||_2 - ||CP1-Phi||_2 = " + num(worst3)));
  return rep;
}

constexpr std::int64_t kSweepShots[] = {30000, 100000, 300000, 1000000};

SuiteReport scaling(const VerifyOptions& opt) {
  SuiteReport rep{"scaling", {}};
  const ChoiMatrix truth = truth_of(ChannelSpec::unitary_channel(qft_unitary(8)));
  std::vector<double> lx;
  std::vector<double> ly;
  std::string detail;
  for (std::int64_t n : kSweepShots) {
    TrialSpec spec;
    spec.shots = n;
    const auto ts = trials(truth, spec, 10, derive_seed(opt.seed, {5, static_cast<std::uint64_t>(n)}), opt.threads);
    const double med = median(pls_trace_errors(ts, truth));
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(med));
    detail += (detail.empty() ? "" : "; ") + std::string("N=") + std::to_string(n) + " median=" + num(med);
  }
  const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4.0;
  const double my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  rep.checks.push_back({"slope_in_[-0.6,-0.4]", slope >= -0.6 && slope <= -0.4, slope, -0.5, detail});
  return rep;
}

SuiteReport low_rank(const VerifyOptions& opt) {
  SuiteReport rep{"low_rank", {}};
  const ChoiMatrix truth = truth_of(ChannelSpec::unitary_channel(qft_unitary(8)));
  TrialSpec spec;
  spec.shots = 1000000;
  const auto ts = trials(truth, spec, 10, derive_seed(opt.seed, {6}), opt.threads);
  const double pls = median(pls_trace_errors(ts, truth));
  const double ls = median(ls_trace_errors(ts, truth));
  rep.checks.push_back(at_most("median_pls_over_ls", pls / ls, 10.0 / 64.0,
                               "median PLS " + num(pls) + ", median LS " + num(ls)));

  // PLS beats LS in trace norm for rank-1 channels at N >= 1e5.
  int wins = 0;
  int runs = 0;
  for (int k = 1; k <= 3; ++k) {
    const int d = 1 << k;
    const ChoiMatrix t = truth_of(ChannelSpec::random_unitary(d, derive_seed(opt.seed, {6, 1, static_cast<std::uint64_t>(k)})));
    TrialSpec s;
    s.shots = 100000;
    const auto rs = trials(t, s, 20, derive_seed(opt.seed, {6, 2, static_cast<std::uint64_t>(k)}), opt.threads);
    const auto p = pls_trace_errors(rs, t);
    const auto l = ls_trace_errors(rs, t);
    for (std::size_t i = 0; i < p.size(); ++i) wins += p[i] <= l[i] ? 1 : 0;
    runs += static_cast<int>(p.size());
  }
  rep.checks.push_back(at_least("pls_beats_ls_fraction", static_cast<double>(wins) / runs, 0.95,
                                std::to_string(runs) + " rank-1 runs, k in {1,2,3}, N=1e5"));
  return rep;
}

SuiteReport rank_monotonicity(const VerifyOptions& opt) {
  SuiteReport rep{"rank_monotonicity", {}};
  std::vector<double> med;
  std::string detail;
  for (int r : {1, 2, 4, 8}) {
    const ChoiMatrix truth = truth_of(ChannelSpec::mixed_unitary(8, r, qft_unitary(8)));
    TrialSpec spec;
    spec.shots = 1000000;
    const auto ts = trials(truth, spec, 10, derive_seed(opt.seed, {7, static_cast<std::uint64_t>(r)}), opt.threads);
    med.push_back(median(pls_trace_errors(ts, truth)));
    detail += (detail.empty() ? "" : "; ") + std::string("r=") + std::to_string(r) + " median=" + num(med.back());
  }
  bool monotone = true;
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < med.size(); ++i) {
    monotone = monotone && med[i] >= med[i - 1];
    if (med[i] <= 1.0) worst_ratio = std::max(worst_ratio, med[i] / med[i - 1]);
  }
  rep.checks.push_back({"nondecreasing", monotone, monotone ? 1.0 : 0.0, 1.0, detail});
  rep.checks.push_back(at_most("max_doubling_ratio", worst_ratio, 2.2, detail));
  return rep;
}

SuiteReport hip_superiority(const VerifyOptions& opt) {
  SuiteReport rep{"hip_superiority", {}};
  const ChoiMatrix truth = truth_of(ChannelSpec::unitary_channel(qft_unitary(16)));
  const LsEstimate ls =
      least_squares(sample(truth, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 1000000, derive_seed(opt.seed, {8})}));
  const Matrix x = hermitian_part(ls.matrix);
  const Matrix cp1 = proj_cp1_thresholded(x, std::max(0.0, -min_eigenvalue(x)));
  const double target = -1e-7;

  struct Run {
    ProjectionMethod method;
    int cap;
    ProjectionReport report;
  };
  std::vector<Run> runs = {{ProjectionMethod::kHIPSwitch, 5000, {}},
                           {ProjectionMethod::kAP, 500, {}},
                           {ProjectionMethod::kDykstra, 500, {}}};
  parallel_for(static_cast<int>(runs.size()), opt.threads, [&](int i) {
    ProjectionConfig cfg;
    cfg.epsilon = 1e-7;
    cfg.max_outer_iterations = runs[static_cast<std::size_t>(i)].cap;
    runs[static_cast<std::size_t>(i)].report = project_to_cptp(cp1, runs[static_cast<std::size_t>(i)].method, cfg).report;
  });
  auto reached = [&](const ProjectionReport& r) { return r.final_lambda_min >= target; };
  const ProjectionReport& hip = runs[0].report;
  rep.checks.push_back({"hipswitch_reaches_target", reached(hip), hip.final_lambda_min, target,
                        std::to_string(hip.proj_cp_calls) + " proj_cp calls"});
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const ProjectionReport& r = runs[i].report;
    const std::string name(to_string(runs[i].method));
    rep.checks.push_back({name + "_fails_within_500", !reached(r), r.final_lambda_min, target,
                          std::to_string(r.iterations) + " iterations, " + std::to_string(r.proj_cp_calls) +
                              " proj_cp calls"});
    const bool fewer = reached(hip) && hip.proj_cp_calls < r.proj_cp_calls;
    rep.checks.push_back({"hipswitch_fewer_calls_than_" + name, fewer, static_cast<double>(hip.proj_cp_calls),
                          static_cast<double>(r.proj_cp_calls), {}});
  }
  return rep;
}

SuiteReport cross_method(const VerifyOptions& opt) {
  SuiteReport rep{"cross_method", {}};
  constexpr int kInstances = 10;
  struct Outcome {
    double hip_dyk = 0.0;
    double hip_dual = 0.0;
    double dyk_dual = 0.0;
    double grad = 0.0;
  };
  std::vector<Outcome> outs(kInstances);
  parallel_for(kInstances, opt.threads, [&](int i) {
    const std::uint64_t s = derive_seed(opt.seed, {9, static_cast<std::uint64_t>(i)});
    const ChoiMatrix truth = truth_of(ChannelSpec::random_unitary(4, s));
    const LsEstimate ls = least_squares(sample(truth, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 2000, s}));
    const Matrix x = hermitian_part(ls.matrix);
    const Matrix cp1 = proj_cp1_thresholded(x, std::max(0.0, -min_eigenvalue(x)));
    ProjectionConfig cfg;
    cfg.epsilon = 1e-12;
    cfg.max_outer_iterations = 200000;
    cfg.dykstra_step_tolerance = 1e-12;
    cfg.dual.gradient_tolerance = 1e-8;
    cfg.dual.max_iterations = 20000;
    const Matrix hip = project_to_cptp(cp1, ProjectionMethod::kHIPSwitch, cfg).choi.matrix();
    const Matrix dyk = project_to_cptp(cp1, ProjectionMethod::kDykstra, cfg).choi.matrix();
    const ProjectionResult dual = project_to_cptp(cp1, ProjectionMethod::kDual, cfg);
    Outcome& o = outs[static_cast<std::size_t>(i)];
    o.hip_dyk = (hip - dyk).norm();
    o.hip_dual = (hip - dual.choi.matrix()).norm();
    o.dyk_dual = (dyk - dual.choi.matrix()).norm();
    o.grad = dual.report.dual_gradient_norm;
  });
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double g = 0.0;
  for (const Outcome& o : outs) {
    a = std::max(a, o.hip_dyk);
    b = std::max(b, o.hip_dual);
    c = std::max(c, o.dyk_dual);
    g = std::max(g, o.grad);
  }
  const std::string detail = "max over 10 two-qubit instances";
  std::vector<double> gaps;
  for (const Outcome& o : outs) gaps.push_back(o.hip_dyk);
  const std::string hip_detail = detail + "; HIPswitch-Dykstra gap min " +
                                 num(*std::min_element(gaps.begin(), gaps.end())) + " median " + num(median(gaps));
  rep.checks.push_back(at_most("hipswitch_vs_dykstra", a, 1e-4, hip_detail));
  rep.checks.push_back(at_most("hipswitch_vs_dual", b, 1e-4, detail));
  rep.checks.push_back(at_most("dykstra_vs_dual", c, 1e-4, detail));
  rep.checks.push_back(at_most("dual_gradient_norm", g, 1e-8, detail));
  return rep;
}

SuiteReport bound_validity(const VerifyOptions& opt) {
  SuiteReport rep{"bound_validity", {}};
  constexpr int kRuns = 100;
  constexpr double kEta = 0.05;
  for (int sc = 1; sc <= 4; ++sc) {
    const Scenario scenario = scenario_from_int(sc);
    struct Outcome {
      double frob = 0.0;
      double trace = 0.0;
      bool covered_frob = false;
      bool covered_trace = false;
    };
    std::vector<Outcome> outs(kRuns);
    ErrorBudget budget;
    budget.scenario = scenario;
    budget.qubits = 1;
    budget.shots = 10000;
    budget.rank = 1;
    budget.eta = kEta;
    parallel_for(kRuns, opt.threads, [&](int i) {
      const std::uint64_t s = derive_seed(opt.seed, {10, static_cast<std::uint64_t>(sc), static_cast<std::uint64_t>(i)});
      const ChoiMatrix truth = truth_of(ChannelSpec::random_unitary(2, s));
      TrialSpec spec;
      spec.scenario = scenario;
      spec.shots = 10000;
      spec.seed = s;
      const TrialResult t = run_trial(truth, spec);
      const Matrix& est = t.pls.estimate.matrix();
      Outcome& o = outs[static_cast<std::size_t>(i)];
      o.frob = distance(est, truth.matrix(), Metric::kFrobenius);
      o.trace = distance(est, truth.matrix(), Metric::kTrace);
      RealVector ev = hermitian_eigenvalues(est);
      std::vector<double> desc(ev.data(), ev.data() + ev.size());
      std::sort(desc.rbegin(), desc.rend());
      const ConfidenceRegion cr = confidence_region(desc, budget);
      o.covered_frob = o.frob <= cr.frobenius_radius;
      o.covered_trace = o.trace <= cr.trace_radius;
    });
    const std::string tag = "scenario" + std::to_string(sc);
    int violations = 0;
    int grid_points = 0;
    std::string worst;
    double worst_gap = -INFINITY;
    for (BoundNorm norm : {BoundNorm::kFrobenius, BoundNorm::kTrace}) {
      for (int e = 1; e <= 99; ++e) {
        budget.epsilon = e / 100.0;
        const double bound = pls_failure_bound(budget, norm);
        if (bound >= 1.0) continue;
        ++grid_points;
        int hits = 0;
        for (const Outcome& o : outs) hits += (norm == BoundNorm::kFrobenius ? o.frob : o.trace) >= budget.epsilon;
        const double frac = static_cast<double>(hits) / kRuns;
        const double allowed = bound + 3.0 * std::sqrt(bound * (1.0 - bound) / kRuns);
        if (frac > allowed) ++violations;
        if (frac - allowed > worst_gap) {
          worst_gap = frac - allowed;
          worst = std::string(norm == BoundNorm::kFrobenius ? "frobenius" : "trace") + " eps=" + num(budget.epsilon);
        }
      }
    }
    rep.checks.push_back(at_most(tag + "/failure_fraction_violations", violations, 0,
                                 std::to_string(grid_points) + " grid points with bound < 1; tightest at " + worst +
                                     " (gap " + num(worst_gap) + ")"));
    const double sigma = std::sqrt(kEta * (1.0 - kEta) / kRuns);
    int cf = 0;
    int ct = 0;
    for (const Outcome& o : outs) {
      cf += o.covered_frob ? 1 : 0;
      ct += o.covered_trace ? 1 : 0;
    }
    rep.checks.push_back(at_least(tag + "/frobenius_region_coverage", static_cast<double>(cf) / kRuns,
                                  (1.0 - kEta) - 3.0 * sigma));
    rep.checks.push_back(at_least(tag + "/trace_region_coverage", static_cast<double>(ct) / kRuns,
                                  (1.0 - kEta) - 3.0 * sigma));
  }
  return rep;
}

std::string suites_csv(const std::vector<std::string>& names, const VerifyOptions& opt) {
  std::vector<SuiteReport> reps;
  for (const std::string& n : names) reps.push_back(run_suite(n, opt));
  std::ostringstream os;
  write_suite_csv(os, reps);
  return os.str();
}

std::string run_csv(int threads, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::kSampleSizeSweep;
  cfg.scenario = Scenario::kPauliAncilla;
  cfg.qubits = 2;
  cfg.channel.kind = "noisy_qft";
  cfg.shots = {10000, 100000};
  cfg.shots_given = true;
  cfg.repetitions = 4;
  cfg.seed = seed;
  const ExperimentOutput out = run_experiment(cfg, threads);
  std::ostringstream os;
  write_errors_csv(os, out.errors);
  write_lambda_csv(os, out.traces);
  return os.str();
}

SuiteReport determinism(const VerifyOptions& opt) {
  SuiteReport rep{"determinism", {}};
  const std::string a = run_csv(1, opt.seed);
  const std::string b = run_csv(1, opt.seed);
  const std::string c = run_csv(std::max(2, opt.threads), opt.seed);
  rep.checks.push_back({"run_rerun_identical", a == b, a == b ? 1.0 : 0.0, 1.0, std::to_string(a.size()) + " bytes"});
  rep.checks.push_back({"run_thread_count_invariant", a == c, a == c ? 1.0 : 0.0, 1.0, {}});
  const std::vector<std::string> suites = {"identifiability", "bound_validity"};
  VerifyOptions threaded = opt;
  threaded.threads = std::max(2, opt.threads);
  const std::string v1 = suites_csv(suites, opt);
  const std::string v2 = suites_csv(suites, opt);
  const std::string v3 = suites_csv(suites, threaded);
  rep.checks.push_back({"verify_rerun_identical", v1 == v2, v1 == v2 ? 1.0 : 0.0, 1.0,
                        "identifiability + bound_validity, " + std::to_string(v1.size()) + " bytes"});
  rep.checks.push_back({"verify_thread_count_invariant", v1 == v3, v1 == v3 ? 1.0 : 0.0, 1.0, {}});
  return rep;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "identifiability", "isotropy",        "projection_oracles", "properties",     "scaling",    "low_rank",
      "rank_monotonicity", "hip_superiority", "cross_method",      "bound_validity", "determinism"};
  return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opt) {
  if (name == "identifiability") return identifiability(opt);
  if (name == "isotropy") return isotropy(opt);
  if (name == "projection_oracles") return projection_oracles(opt);
  if (name == "properties") return properties(opt);
  if (name == "scaling") return scaling(opt);
  if (name == "low_rank") return low_rank(opt);
  if (name == "rank_monotonicity") return rank_monotonicity(opt);
  if (name == "hip_superiority") return hip_superiority(opt);
  if (name == "cross_method") return cross_method(opt);
  if (name == "bound_validity") return bound_validity(opt);
  if (name == "determinism") return determinism(opt);
  fail(ErrorKind::kConfig, "unknown suite '" + std::string(name) + "'");
}

void write_suite_csv(std::ostream& os, const std::vector<SuiteReport>& reports) {
  os << "suite,check,passed,measured,threshold,detail\n";
  for (const SuiteReport& r : reports)
    for (const CheckResult& c : r.checks) {
      std::string detail = c.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      os << r.suite << ',' << c.name << ',' << (c.passed ? "PASS" : "FAIL") << ',' << fmt("%.17g", c.measured)
         << ',' << fmt("%.17g", c.threshold) << ',' << detail << '\n';
    }
}

}  // namespace pls::harness
