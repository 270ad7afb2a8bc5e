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

#include "pls/projections.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <utility>

#include "pls/errors.hpp"
#include "pls/tolerances.hpp"

namespace pls {

std::string_view to_string(ProjectionMethod m) {
  switch (m) {
    case ProjectionMethod::kAP: return "AP";
    case ProjectionMethod::kDykstra: return "Dykstra";
    case ProjectionMethod::kOneHIP: return "oneHIP";
    case ProjectionMethod::kPureHIP: return "pureHIP";
    case ProjectionMethod::kHIPSwitch: return "HIPswitch";
    case ProjectionMethod::kDual: return "dual";
  }
  return "unknown";
}

ProjectionMethod projection_method_from_string(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (ProjectionMethod m : all_projection_methods()) {
    std::string candidate(to_string(m));
    for (char& c : candidate) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (candidate == lower) return m;
  }
  fail(ErrorKind::kConfig, "unknown projection method '" + std::string(name) +
                               "' (expected AP, Dykstra, oneHIP, pureHIP, HIPswitch or dual)");
}

const std::vector<ProjectionMethod>& all_projection_methods() {
  static const std::vector<ProjectionMethod> kAll = {
      ProjectionMethod::kAP,      ProjectionMethod::kDykstra,   ProjectionMethod::kOneHIP,
      ProjectionMethod::kPureHIP, ProjectionMethod::kHIPSwitch, ProjectionMethod::kDual};
  return kAll;
}

std::string_view to_string(IterationMode m) {
  switch (m) {
    case IterationMode::kAP: return "AP";
    case IterationMode::kHIP: return "HIP";
    case IterationMode::kDykstra: return "Dykstra";
    case IterationMode::kDual: return "dual";
  }
  return "unknown";
}

double HalfSpace::slack(const Matrix& x) const { return frobenius_inner(normal, x) - offset; }

void ProjectionReport::write_trace(std::ostream& os, bool header) const {
  if (header) os << "method,iteration,mode,lambda_min,cum_projcp_calls\n";
  char buf[64];
  for (const IterationRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.lambda_min);
    os << to_string(method) << ',' << r.iteration << ',' << to_string(r.mode) << ',' << buf << ','
       << r.cumulative_proj_cp_calls << '\n';
  }
}

Matrix proj_tp(const Matrix& x) {
  const int d = checked_sqrt_dim(x.rows());
  require(x.cols() == x.rows(), ErrorKind::kDimensionMismatch, "matrix must be square");
  const Matrix shift =
      (identity(d) / static_cast<double>(d) - partial_trace(x, d, PartialTraceOver::kSystem)) /
      static_cast<double>(d);
  Matrix out = x;
  for (int i = 0; i < d; ++i) out.block(i * d, i * d, d, d) += shift;
  return out;
}

Matrix proj_trace_annihilating(const Matrix& x) {
  const int d = checked_sqrt_dim(x.rows());
  require(x.cols() == x.rows(), ErrorKind::kDimensionMismatch, "matrix must be square");
  const Matrix shift = partial_trace(x, d, PartialTraceOver::kSystem) / static_cast<double>(d);
  Matrix out = x;
  for (int i = 0; i < d; ++i) out.block(i * d, i * d, d, d) -= shift;
  return out;
}

namespace {

void check_hermitian(const Matrix& x) {
  require(x.rows() == x.cols(), ErrorKind::kInvalidInput, "matrix must be square");
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  require(hermiticity_defect(x) <= 1e-10 * scale, ErrorKind::kInvalidInput,
          "projection input is not Hermitian");
}

}  // namespace

Matrix proj_cp(const Eigensystem& eig) {
  return from_eigensystem(eig.vectors, eig.values.cwiseMax(0.0));
}

Matrix proj_cp(const Matrix& x) {
  check_hermitian(x);
  return proj_cp(hermitian_eigensystem(hermitian_part(x)));
}

RealVector threshold_spectrum(const RealVector& ascending, double tau) {
  require(tau >= 0.0, ErrorKind::kDomain, "threshold must be nonnegative");
  const Eigen::Index n = ascending.size();
  RealVector mu = RealVector::Zero(n);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ascending(i) > tau) {
      mu(i) = ascending(i) + tau;
      total += mu(i);
    }
  }
  if (total >= 1.0) {
    // Water-filling: the largest m entries stay positive after the shift x0.
    double top = 0.0;
    double x0 = 0.0;
    for (Eigen::Index m = 1; m <= n; ++m) {
      top += mu(n - m);
      const double candidate = (top - 1.0) / static_cast<double>(m);
      if (mu(n - m) > candidate) x0 = candidate;
      else break;
    }
    for (Eigen::Index i = 0; i < n; ++i) mu(i) = std::max(mu(i) - x0, 0.0);
    return mu;
  }
  // Restore from the top with lambda + tau; the first entry that would push the
  // trace past one receives the remaining mass.
  mu.setZero();
  double cumulative = 0.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double full = ascending(i) + tau;
    if (cumulative + full < 1.0) {
      mu(i) = full;
      cumulative += full;
    } else {
      mu(i) = 1.0 - cumulative;
      cumulative = 1.0;
      break;
    }
  }
  return mu;
}

Matrix proj_cp1_thresholded(const Matrix& x, double tau) {
  check_hermitian(x);
  require(tau >= 0.0, ErrorKind::kDomain, "threshold must be nonnegative");
  require(std::abs(x.trace().real() - 1.0) <= 1e-10, ErrorKind::kConstraintViolation,
          "thresholded CP1 projection needs a trace-one input");
  const Eigensystem eig = hermitian_eigensystem(hermitian_part(x));
  return from_eigensystem(eig.vectors, threshold_spectrum(eig.values, tau));
}

namespace {

constexpr double kMultiplierFloor = -1e-12;
constexpr double kPivotRatio = 1e-12;

struct StoredHalfSpace {
  HalfSpace h;
  Matrix reduced;  // linear-part projection of the normal onto the TP directions
  double reduced_sq = 0.0;
  std::uint64_t id = 0;
};

StoredHalfSpace make_stored(HalfSpace h, std::uint64_t id) {
  StoredHalfSpace s;
  s.reduced = proj_trace_annihilating(h.normal);
  s.reduced_sq = s.reduced.squaredNorm();
  s.h = std::move(h);
  s.id = id;
  return s;
}

class GramCache {
 public:
  double get(const StoredHalfSpace& a, const StoredHalfSpace& b) {
    if (a.id == b.id) return a.reduced_sq;
    const auto key = a.id < b.id ? std::make_pair(a.id, b.id) : std::make_pair(b.id, a.id);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = frobenius_inner(a.reduced, b.reduced);
    cache_.emplace(key, v);
    return v;
  }

  void forget_except(const std::vector<StoredHalfSpace>& keep) {
    std::vector<std::uint64_t> ids;
    for (const auto& s : keep) ids.push_back(s.id);
    for (auto it = cache_.begin(); it != cache_.end();) {
      const bool live = std::find(ids.begin(), ids.end(), it->first.first) != ids.end() &&
                        std::find(ids.begin(), ids.end(), it->first.second) != ids.end();
      it = live ? std::next(it) : cache_.erase(it);
    }
  }

 private:
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> cache_;
};

struct InnerOutcome {
  std::vector<StoredHalfSpace> active;
  Matrix point;
  int dropped_singular = 0;
};

// Solves L L^T c = r for lower-triangular L stored row-wise.
std::vector<double> cholesky_solve(const std::vector<std::vector<double>>& L,
                                   const std::vector<double>& r) {
  const std::size_t m = r.size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = r[i];
    for (std::size_t k = 0; k < i; ++k) s -= L[i][k] * y[k];
    y[i] = s / L[i][i];
  }
  std::vector<double> c(m);
  for (std::size_t i = m; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= L[k][i] * c[k];
    c[i] = s / L[i][i];
  }
  return c;
}

InnerOutcome hip_inner_impl(const std::vector<StoredHalfSpace>& list, const Matrix& phi,
                            GramCache& cache) {
  InnerOutcome out;
  std::vector<std::vector<double>> L;
  std::vector<double> rhs;
  std::vector<double> coeffs;
  for (const StoredHalfSpace& cand : list) {
    const double g_nn = cand.reduced_sq;
    const std::size_t m = out.active.size();
    std::vector<double> row(m + 1, 0.0);
    double pivot = g_nn;
    for (std::size_t i = 0; i < m; ++i) {
      double s = cache.get(cand, out.active[i]);
      for (std::size_t k = 0; k < i; ++k) s -= L[i][k] * row[k];
      row[i] = s / L[i][i];
      pivot -= row[i] * row[i];
    }
    if (!(g_nn > 0.0) || pivot <= kPivotRatio * g_nn) {
      ++out.dropped_singular;
      continue;
    }
    row[m] = std::sqrt(pivot);
    L.push_back(row);
    rhs.push_back(cand.h.offset - frobenius_inner(cand.h.normal, phi));
    const std::vector<double> c = cholesky_solve(L, rhs);
    if (std::all_of(c.begin(), c.end(), [](double v) { return v >= kMultiplierFloor; })) {
      out.active.push_back(cand);
      coeffs = c;
    } else {
      L.pop_back();
      rhs.pop_back();
    }
  }
  out.point = phi;
  for (std::size_t i = 0; i < out.active.size(); ++i) out.point += coeffs[i] * out.active[i].reduced;
  out.point = hermitian_part(out.point);
  return out;
}

}  // namespace

HipInnerResult hip_inner(const std::vector<HalfSpace>& halfspaces, const Matrix& phi) {
  std::vector<StoredHalfSpace> list;
  std::uint64_t id = 0;
  for (const HalfSpace& h : halfspaces) {
    require(h.normal.rows() == phi.rows() && h.normal.cols() == phi.cols(),
            ErrorKind::kDimensionMismatch, "half-space normal has the wrong shape");
    list.push_back(make_stored(h, id++));
  }
  GramCache cache;
  InnerOutcome o = hip_inner_impl(list, phi, cache);
  HipInnerResult r;
  for (auto& s : o.active) r.active.push_back(std::move(s.h));
  r.point = std::move(o.point);
  r.dropped_singular = o.dropped_singular;
  return r;
}

Finalized depolarizing_finalize(const Matrix& tp_matrix, bool force) {
  const int d = checked_sqrt_dim(tp_matrix.rows());
  const Matrix marginal = partial_trace(tp_matrix, d, PartialTraceOver::kSystem);
  require((marginal - identity(d) / static_cast<double>(d)).cwiseAbs().maxCoeff() <= 1e-9,
          ErrorKind::kConstraintViolation, "finalisation needs a trace-preserving matrix");
  Finalized f;
  f.lambda_min = min_eigenvalue(hermitian_part(tp_matrix));
  if (f.lambda_min >= 0.0) {
    f.choi = hermitian_part(tp_matrix);
    return f;
  }
  require(force || f.lambda_min >= -0.1, ErrorKind::kNotConverged,
          "least eigenvalue " + std::to_string(f.lambda_min) +
              " is below -0.1; the projection has not converged");
  const double dd = static_cast<double>(d) * d;
  const double a = std::abs(f.lambda_min) * dd;
  f.p = a / (1.0 + a);
  f.choi = hermitian_part(tp_matrix) * (1.0 - f.p) + identity(d * d) * (f.p / dd);
  return f;
}

Matrix dual_relaxed_point(const Matrix& x, const Matrix& nu) {
  const int d = checked_sqrt_dim(x.rows());
  require(nu.rows() == d && nu.cols() == d, ErrorKind::kDimensionMismatch,
          "multiplier must be d x d");
  Matrix shifted = x;
  for (int i = 0; i < d; ++i) shifted.block(i * d, i * d, d, d) -= 0.5 * nu;
  return proj_cp(hermitian_part(shifted));
}

namespace {

class Runner {
 public:
  Runner(const Matrix& start, ProjectionMethod method, const ProjectionConfig& cfg)
      : cfg_(cfg), d_(checked_sqrt_dim(start.rows())) {
    report_.method = method;
    check_hermitian(start);
    start_ = hermitian_part(start);
  }

  ProjectionResult run() {
    Matrix unfinalized;
    switch (report_.method) {
      case ProjectionMethod::kAP:
      case ProjectionMethod::kOneHIP:
      case ProjectionMethod::kPureHIP:
      case ProjectionMethod::kHIPSwitch:
        unfinalized = alternate();
        break;
      case ProjectionMethod::kDykstra:
        unfinalized = dykstra();
        break;
      case ProjectionMethod::kDual:
        unfinalized = dual();
        break;
    }
    const Finalized fin = depolarizing_finalize(unfinalized, !report_.converged);
    report_.mixing_p = fin.p;
    report_.final_lambda_min = fin.lambda_min;
    return ProjectionResult{ChoiMatrix(d_, fin.choi), report_, std::move(unfinalized)};
  }

 private:
  void record(IterationMode mode, double lambda_min) {
    report_.lambda_min_trace.push_back(lambda_min);
    report_.rows.push_back({report_.iterations, mode, lambda_min, report_.proj_cp_calls});
  }

  void observe(const Matrix& tp) {
    if (cfg_.observer) cfg_.observer(tp);
  }

  Matrix tp_start() const {
    const Matrix marginal = partial_trace(start_, d_, PartialTraceOver::kSystem);
    const bool tp = (marginal - identity(d_) / static_cast<double>(d_)).cwiseAbs().maxCoeff() <= 1e-14;
    return tp ? start_ : proj_tp(start_);
  }

  // AP, oneHIP, pureHIP and HIPswitch share one loop: a single
  // eigendecomposition per iteration feeds both the stopping test and proj_cp.
  Matrix alternate() {
    const ProjectionMethod method = report_.method;
    IterationMode mode = method == ProjectionMethod::kAP || method == ProjectionMethod::kHIPSwitch
                             ? IterationMode::kAP
                             : IterationMode::kHIP;
    Matrix phi = tp_start();
    observe(phi);
    std::vector<StoredHalfSpace> halfspaces;
    GramCache cache;
    std::uint64_t next_id = 0;
    int ap_counter = 1;
    int hip_counter = 1;
    while (true) {
      const Eigensystem eig = hermitian_eigensystem(phi);
      const double lmin = eig.values(0);
      record(mode, lmin);
      if (lmin >= -cfg_.epsilon) break;
      if (report_.iterations >= cfg_.max_outer_iterations) {
        report_.converged = false;
        break;
      }
      Matrix phi_cp = proj_cp(eig);
      ++report_.proj_cp_calls;
      ++report_.iterations;
      if (mode == IterationMode::kAP) {
        phi = proj_tp(phi_cp);
        if (method == ProjectionMethod::kHIPSwitch && ++ap_counter % cfg_.ap_steps == 0) {
          mode = IterationMode::kHIP;
          ++report_.mode_switches;
          halfspaces.clear();
          cache = GramCache();
        }
      } else {
        Matrix normal = phi_cp - phi;
        const double norm = normal.norm();
        normal /= norm;
        HalfSpace h{normal, frobenius_inner(normal, phi_cp)};
        if (method == ProjectionMethod::kOneHIP) halfspaces.clear();
        halfspaces.insert(halfspaces.begin(), make_stored(std::move(h), next_id++));
        InnerOutcome o = hip_inner_impl(halfspaces, phi, cache);
        report_.dropped_halfspaces += o.dropped_singular;
        halfspaces = std::move(o.active);
        if (static_cast<int>(halfspaces.size()) > cfg_.max_halfspaces)
          halfspaces.resize(static_cast<std::size_t>(cfg_.max_halfspaces));
        cache.forget_except(halfspaces);
        phi = std::move(o.point);
        if (method == ProjectionMethod::kHIPSwitch && ++hip_counter % cfg_.hip_steps == 0) {
          mode = IterationMode::kAP;
          ++report_.mode_switches;
        }
      }
      observe(phi);
    }
    return phi;
  }

  Matrix dykstra() {
    Matrix x = start_;
    Matrix q = Matrix::Zero(x.rows(), x.cols());
    Matrix y_prev;
    while (true) {
      Matrix y = proj_tp(x);
      observe(y);
      const double lmin = hermitian_eigenvalues(y)(0);
      record(IterationMode::kDykstra, lmin);
      const bool small_step = y_prev.size() != 0 && (y - y_prev).norm() <= cfg_.dykstra_step_tolerance;
      if (lmin >= -cfg_.epsilon && small_step) return y;
      if (report_.iterations >= cfg_.max_outer_iterations) {
        report_.converged = false;
        return y;
      }
      const Matrix shifted = y + q;
      x = proj_cp(shifted);
      ++report_.proj_cp_calls;
      ++report_.iterations;
      q = shifted - x;
      y_prev = std::move(y);
    }
  }

  // Orthonormal Hermitian basis of d x d matrices: E_ii, (E_ij + E_ji)/sqrt2,
  // i(E_ij - E_ji)/sqrt2 for i < j.
  Matrix nu_from_params(const RealVector& theta) const {
    Matrix nu = Matrix::Zero(d_, d_);
    Eigen::Index p = 0;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d_; ++i) nu(i, i) = theta(p++);
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) {
        const double re = theta(p++) * r;
        const double im = theta(p++) * r;
        nu(i, j) = cplx(re, -im);
        nu(j, i) = cplx(re, im);
      }
    return nu;
  }

  RealVector params_from_matrix(const Matrix& m) const {
    RealVector theta(static_cast<Eigen::Index>(d_) * d_);
    Eigen::Index p = 0;
    const double r = std::sqrt(2.0);
    for (int i = 0; i < d_; ++i) theta(p++) = m(i, i).real();
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) {
        theta(p++) = r * m(i, j).real();
        theta(p++) = -r * m(i, j).imag();
      }
    return theta;
  }

  struct DualEval {
    double value = 0.0;
    RealVector grad;
    Matrix point;
  };

  DualEval evaluate(const RealVector& theta) {
    DualEval e;
    const Matrix nu = nu_from_params(theta);
    e.point = dual_relaxed_point(start_, nu);
    ++report_.proj_cp_calls;
    const Matrix gap = partial_trace(e.point, d_, PartialTraceOver::kSystem) -
                       identity(d_) / static_cast<double>(d_);
    e.value = (e.point - start_).squaredNorm() + frobenius_inner(nu, gap);
    e.grad = params_from_matrix(hermitian_part(gap));
    return e;
  }

  Matrix dual() {
    const Eigen::Index n = static_cast<Eigen::Index>(d_) * d_;
    const double lipschitz = static_cast<double>(d_) / 2.0;
    RealVector theta = RealVector::Zero(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) / lipschitz;
    DualEval cur = evaluate(theta);
    auto note = [&](const DualEval& e) {
      const Matrix tp = proj_tp(e.point);
      observe(tp);
      record(IterationMode::kDual, hermitian_eigenvalues(tp)(0));
    };
    note(cur);
    while (true) {
      report_.dual_gradient_norm = cur.grad.norm();
      if (report_.dual_gradient_norm <= cfg_.dual.gradient_tolerance) break;
      if (report_.iterations >= cfg_.dual.max_iterations) {
        report_.converged = false;
        break;
      }
      ++report_.iterations;
      RealVector dir = h * cur.grad;
      double slope = cur.grad.dot(dir);
      if (!(slope > 0.0)) {
        h = Eigen::MatrixXd::Identity(n, n) / lipschitz;
        dir = cur.grad / lipschitz;
        slope = cur.grad.dot(dir);
      }
      double alpha = 1.0;
      DualEval next;
      bool accepted = false;
      for (int trial = 0; trial < 40; ++trial) {
        next = evaluate(theta + alpha * dir);
        if (next.value >= cur.value + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        // A 1/L gradient step always ascends for an L-smooth concave objective.
        dir = cur.grad / lipschitz;
        alpha = 1.0;
        next = evaluate(theta + dir);
        h = Eigen::MatrixXd::Identity(n, n) / lipschitz;
      }
      const RealVector s = alpha * dir;
      const RealVector y = cur.grad - next.grad;
      const double sy = s.dot(y);
      if (sy > 1e-16 * s.norm() * y.norm() && sy > 0.0) {
        const double rho = 1.0 / sy;
        const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
        h = (ident - rho * s * y.transpose()) * h * (ident - rho * y * s.transpose()) +
            rho * s * s.transpose();
      }
      theta += s;
      cur = std::move(next);
      note(cur);
    }
    report_.dual_gradient_norm = cur.grad.norm();
    return proj_tp(cur.point);
  }

  const ProjectionConfig& cfg_;
  int d_;
  Matrix start_;
  ProjectionReport report_;
};

}  // namespace

ProjectionResult project_to_cptp(const Matrix& start, ProjectionMethod method,
                                 const ProjectionConfig& cfg) {
  require(cfg.epsilon > 0 && cfg.ap_steps > 0 && cfg.hip_steps > 0 && cfg.max_halfspaces > 0 &&
              cfg.max_outer_iterations > 0 && cfg.dual.max_iterations > 0 &&
              cfg.dual.gradient_tolerance > 0,
          ErrorKind::kConfig, "projection settings must be positive");
  Runner runner(start, method, cfg);
  return runner.run();
}

PlsResult pls_pipeline(const LsEstimate& ls, ProjectionMethod method, const ProjectionConfig& cfg) {
  require(ls.matrix.rows() == ls.dim * ls.dim, ErrorKind::kDimensionMismatch,
          "LS estimate has the wrong size");
  const Matrix x = hermitian_part(ls.matrix);
  const double lmin = min_eigenvalue(x);
  const double tau = std::max(0.0, -lmin);
  Matrix cp1 = proj_cp1_thresholded(x, tau);
  ProjectionResult projected = project_to_cptp(cfg.direct ? x : cp1, method, cfg);
  PlsResult out{std::move(projected.choi), std::move(cp1), tau, 0, std::move(projected.report)};
  const RealVector ev = hermitian_eigenvalues(out.cp1);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kTol.rank) ++out.cp1_rank;
  return out;
}

}  // namespace pls
