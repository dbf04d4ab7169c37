// Copyright 2026 The fimax Authors
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fimax/error.hpp"
#include "fimax/estimation.hpp"
#include "fimax/sensitivity.hpp"
#include "io/format.hpp"

namespace fimax {
namespace {

// Sigma^-1, or the identity for a zero covariance (noise-free data).
Eigen::MatrixXd Weight(const MeasurementNoise& sigma) {
  if (sigma.is_zero()) return Eigen::MatrixXd::Identity(sigma.dim(), sigma.dim());
  return sigma.inverse();
}

void CheckProblem(const EstimationProblem& prob, const Eigen::VectorXd& theta) {
  if (prob.model == nullptr) throw Error(ErrorCode::kInvalidArgument, "estimation problem has no model");
  if (prob.u.empty()) throw Error(ErrorCode::kInvalidArgument, "estimation problem has no control");
  if (theta.size() != prob.model->param_dim() || prob.x0.size() != prob.model->state_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "theta or x0 does not match the model");
  }
  if (!theta.allFinite()) throw Error(ErrorCode::kInvalidArgument, "theta is not finite");
}

SensitivityBundle Simulate(const EstimationProblem& prob, const Eigen::VectorXd& theta,
                           const std::vector<double>& times) {
  return propagate(*prob.model, prob.x0, prob.u, theta, prob.span(), true, prob.integrator, times);
}

// Residuals always come from this state-only run so that data synthesized at
// theta reproduce exactly, whichever routine evaluates them.
DenseTrajectory SimulateStates(const EstimationProblem& prob, const Eigen::VectorXd& theta,
                               const std::vector<double>& times) {
  const PlantModel& model = *prob.model;
  Eigen::VectorXd u;
  auto field = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) {
    prob.u.eval(t, u);
    model.dynamics(x, u, theta, dxdt);
  };
  const std::vector<double> bps = merged_breakpoints(prob.u, prob.span(), times);
  return integrate(field, prob.x0, prob.span(), prob.integrator, bps);
}

}  // namespace

void MeasurementSet::validate(int h, TimeSpan span) const {
  if (values.size() != times.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "measurement times and values differ in length");
  }
  if (sigma.dim() != h) throw Error(ErrorCode::kDimensionMismatch, "noise covariance dimension");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < span.t0 || times[i] > span.tf) {
      throw Error(ErrorCode::kOutOfDomain, "measurement time outside the trajectory span");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "measurement times must be strictly increasing");
    }
    if (values[i].size() != h) throw Error(ErrorCode::kDimensionMismatch, "measurement size");
    if (!values[i].allFinite()) throw Error(ErrorCode::kInvalidArgument, "measurement not finite");
  }
}

std::vector<double> sample_times(TimeSpan span, double rate_hz) {
  if (!(rate_hz > 0) || !std::isfinite(rate_hz)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling rate must be positive");
  }
  if (!(span.tf > span.t0)) throw Error(ErrorCode::kInvalidArgument, "empty span");
  std::vector<double> out;
  const double slack = 1e-9 / rate_hz;
  for (long i = 1;; ++i) {
    double t = span.t0 + static_cast<double>(i) / rate_hz;
    if (t > span.tf + slack) break;
    out.push_back(std::min(t, span.tf));
  }
  return out;
}

std::string measurements_to_csv(const MeasurementSet& meas) {
  std::string out = "t";
  const int h = meas.values.empty() ? meas.sigma.dim() : static_cast<int>(meas.values[0].size());
  for (int r = 0; r < h; ++r) out += ",y" + std::to_string(r + 1);
  out += '\n';
  for (size_t i = 0; i < meas.size(); ++i) {
    out += io::FormatDouble(meas.times[i]);
    for (int r = 0; r < h; ++r) out += ',' + io::FormatDouble(meas.values[i][r]);
    out += '\n';
  }
  return out;
}

MeasurementSet measurements_from_csv(const std::string& text, const MeasurementNoise& sigma) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoError, "measurement CSV is empty");
  const int h = sigma.dim();
  {
    std::string expect = "t";
    for (int r = 0; r < h; ++r) expect += ",y" + std::to_string(r + 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expect) {
      throw Error(ErrorCode::kIoError, "measurement CSV header must be '" + expect + "'");
    }
  }
  MeasurementSet meas;
  meas.sigma = sigma;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0;
      auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc() || res.ptr != comma) {
        throw Error(ErrorCode::kIoError, "bad number on measurement CSV row " + std::to_string(row));
      }
      fields.push_back(v);
      p = comma + 1;
    }
    if (static_cast<int>(fields.size()) != h + 1) {
      throw Error(ErrorCode::kIoError, "wrong column count on measurement CSV row " + std::to_string(row));
    }
    meas.times.push_back(fields[0]);
    meas.values.push_back(Eigen::Map<Eigen::VectorXd>(fields.data() + 1, h));
  }
  return meas;
}

std::mt19937_64 make_stream(uint64_t seed, uint64_t trial, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(trial), static_cast<uint32_t>(trial >> 32),
                    static_cast<uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::vector<Eigen::VectorXd> simulate_outputs(const EstimationProblem& prob,
                                              const Eigen::VectorXd& theta,
                                              const std::vector<double>& times) {
  CheckProblem(prob, theta);
  const DenseTrajectory states = SimulateStates(prob, theta, times);
  std::vector<Eigen::VectorXd> ys;
  ys.reserve(times.size());
  Eigen::VectorXd x, u;
  for (double t : times) {
    states.eval(t, x);
    prob.u.eval(t, u);
    ys.push_back(eval_output(*prob.model, x, u, theta));
  }
  return ys;
}

double ls_cost(const EstimationProblem& prob, const Eigen::VectorXd& theta,
               const MeasurementSet& meas) {
  CheckProblem(prob, theta);
  meas.validate(prob.model->output_dim(), prob.span());
  const Eigen::MatrixXd w = Weight(meas.sigma);
  const std::vector<Eigen::VectorXd> ys = simulate_outputs(prob, theta, meas.times);
  double beta = 0.0;
  for (size_t i = 0; i < ys.size(); ++i) {
    const Eigen::VectorXd r = meas.values[i] - ys[i];
    beta += 0.5 * r.dot(w * r);
  }
  return beta;
}

LsDerivatives ls_derivatives(const EstimationProblem& prob, const Eigen::VectorXd& theta,
                             const MeasurementSet& meas) {
  CheckProblem(prob, theta);
  const PlantModel& model = *prob.model;
  meas.validate(model.output_dim(), prob.span());
  const int n = model.state_dim(), p = model.param_dim(), h = model.output_dim();
  const Eigen::MatrixXd w = Weight(meas.sigma);
  const SensitivityBundle sim = Simulate(prob, theta, meas.times);
  const std::vector<Eigen::VectorXd> ys = simulate_outputs(prob, theta, meas.times);

  LsDerivatives out;
  out.gradient = Eigen::VectorXd::Zero(p);
  out.hessian = Eigen::MatrixXd::Zero(p, p);
  out.gauss_newton = Eigen::MatrixXd::Zero(p, p);
  OutputDerivatives od;
  Eigen::VectorXd x, u;
  for (size_t i = 0; i < meas.size(); ++i) {
    const double t = meas.times[i];
    sim.state.eval(t, x);
    prob.u.eval(t, u);
    const Eigen::MatrixXd psi = sim.psi_at(t);
    const Tensor3 omega = sim.omega_at(t);
    const Eigen::VectorXd r = meas.values[i] - ys[i];
    model.output_derivatives(x, u, theta, od);
    const Eigen::MatrixXd gamma = od.gx * psi + od.gtheta;
    const Eigen::VectorXd wr = w * r;

    out.cost += 0.5 * r.dot(wr);
    out.gradient -= gamma.transpose() * wr;
    out.gauss_newton += gamma.transpose() * w * gamma;

    // Second derivative of each output component with respect to theta.
    for (int row = 0; row < h; ++row) {
      if (wr[row] == 0.0) continue;
      Eigen::MatrixXd gxx(n, n), gxt(n, p), gtt(p, p);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) gxx(a, b) = od.gxx(row, a, b);
        for (int k = 0; k < p; ++k) gxt(a, k) = od.gxtheta(row, a, k);
      }
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) gtt(j, k) = od.gthetatheta(row, j, k);
      }
      Eigen::MatrixXd d2y = psi.transpose() * gxx * psi + gtt;
      const Eigen::MatrixXd cross = psi.transpose() * gxt;
      d2y += cross + cross.transpose();
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
          double s = 0.0;
          for (int a = 0; a < n; ++a) s += od.gx(row, a) * omega(a, j, k);
          d2y(j, k) += s;
        }
      }
      out.hessian -= wr[row] * d2y;
    }
  }
  out.hessian += out.gauss_newton;
  out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  return out;
}

EstimationResult estimate(const EstimationProblem& prob, const Eigen::VectorXd& theta0,
                          const MeasurementSet& meas, const EstimatorOptions& opts) {
  if (!(opts.tol > 0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (opts.max_iter < 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 0");
  CheckProblem(prob, theta0);

  EstimationResult res;
  res.theta_hat = theta0;
  LsDerivatives d = ls_derivatives(prob, theta0, meas);
  res.cost_trace.push_back(d.cost);
  res.grad_norm_trace.push_back(d.gradient.norm());
  res.status = "MaxIterExceeded";

  auto safe_cost = [&](const Eigen::VectorXd& th) {
    try {
      const double c = ls_cost(prob, th, meas);
      return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
    } catch (const Error& e) {
      if (!IsNumericalError(e.code())) throw;
      return std::numeric_limits<double>::infinity();
    }
  };

  while (true) {
    if (res.grad_norm_trace.back() <= opts.tol) {
      res.converged = true;
      res.status = "converged";
      break;
    }
    if (res.iterations >= opts.max_iter) break;

    Eigen::VectorXd dir;
    StepKind kind = StepKind::kGradient;
    Eigen::LLT<Eigen::MatrixXd> llt(d.hessian);
    if (llt.info() == Eigen::Success) {
      dir = -llt.solve(d.gradient);
      kind = StepKind::kNewton;
    }
    if (kind != StepKind::kNewton || !dir.allFinite() || d.gradient.dot(dir) >= 0) {
      dir = -d.gradient;
      kind = StepKind::kGradient;
    }
    const double slope = d.gradient.dot(dir);

    // Decreases below this are rounding noise in beta.
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(d.cost);
    double gamma = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    for (int j = 0; j <= opts.max_backtracks; ++j) {
      if (-gamma * slope <= floor) break;
      trial = res.theta_hat + gamma * dir;
      const double c = safe_cost(trial);
      if (c <= d.cost + opts.c1 * gamma * slope) {
        accepted = true;
        break;
      }
      gamma *= opts.backtrack;
    }
    if (!accepted) {
      res.status = "LinesearchFailed";
      break;
    }
    res.theta_hat = trial;
    res.step_kinds.push_back(kind);
    res.step_sizes.push_back(gamma);
    ++res.iterations;
    d = ls_derivatives(prob, res.theta_hat, meas);
    res.cost_trace.push_back(d.cost);
    res.grad_norm_trace.push_back(d.gradient.norm());
  }
  return res;
}

MeasurementSet synthesize_measurements(const EstimationProblem& prob,
                                       const Eigen::VectorXd& theta_true, double rate_hz,
                                       const MeasurementNoise& sigma, uint64_t seed,
                                       uint64_t trial) {
  CheckProblem(prob, theta_true);
  if (sigma.dim() != prob.model->output_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "noise covariance does not match the output");
  }
  MeasurementSet meas;
  meas.sigma = sigma;
  meas.times = sample_times(prob.span(), rate_hz);
  meas.values = simulate_outputs(prob, theta_true, meas.times);
  if (!sigma.is_zero()) {
    std::mt19937_64 rng = make_stream(seed, trial, kNoiseStream);
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(sigma.dim());
    for (auto& y : meas.values) {
      for (auto& v : z) v = normal(rng);
      y += sigma.cholesky() * z;
    }
  }
  return meas;
}

}  // namespace fimax
