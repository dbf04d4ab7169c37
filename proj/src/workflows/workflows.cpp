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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "fimax/error.hpp"
#include "fimax/workflows.hpp"
#include "io/csv.hpp"
#include "io/format.hpp"

namespace fimax {
namespace {

using io::FormatDouble;

std::string Join(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + FormatDouble(v[i]);
  return out;
}

// "m1: 0.99, c: -0.1"
std::string NamedDirection(const PlantModel& model, const Eigen::VectorXd& v) {
  const auto names = model.param_names();
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + names[static_cast<size_t>(i)] + ": " + FormatDouble(v[i]);
  }
  return out;
}

// Writes files under the output directory and remembers their names.
class Sink {
 public:
  explicit Sink(std::string dir) : dir_(std::move(dir)) { io::make_dirs(dir_); }

  void write(const std::string& name, const std::string& contents) {
    io::write_file((std::filesystem::path(dir_) / name).string(), contents);
    out_.files.push_back(name);
  }
  std::ostringstream& summary() { return summary_; }
  WorkflowOutput finish() {
    out_.summary = summary_.str();
    return std::move(out_);
  }

 private:
  std::string dir_;
  std::ostringstream summary_;
  WorkflowOutput out_;
};

std::string TrajectoryCsv(const Experiment& ex, const ExtendedTrajectory& eta) {
  const PlantModel& m = *ex.model;
  std::vector<std::string> header{"t"};
  for (const auto& s : m.state_names()) header.push_back(s);
  for (const auto& s : m.input_names()) header.push_back(s);
  const DenseTrajectory x = eta.xbar.block(0, m.state_dim());
  return io::to_csv(io::sample_table(header, ex.problem.control_grid(), {&x, &eta.u}));
}

std::string ControlCsv(const Experiment& ex, const ExtendedTrajectory& eta) {
  std::vector<std::string> header{"t"};
  for (const auto& s : ex.model->input_names()) header.push_back(s);
  return io::to_csv(io::sample_table(header, ex.problem.control_grid(), {&eta.u}));
}

std::string EstimateTraceCsv(const EstimationResult& r) {
  std::string out = "iter,beta,grad_norm,step,kind\n";
  for (size_t k = 0; k < r.cost_trace.size(); ++k) {
    const bool has_step = k < r.step_sizes.size();
    out += std::to_string(k) + ',' + FormatDouble(r.cost_trace[k]) + ',' +
           FormatDouble(r.grad_norm_trace[k]) + ',' +
           FormatDouble(has_step ? r.step_sizes[k] : 0.0) + ',' +
           (has_step ? (r.step_kinds[k] == StepKind::kNewton ? "newton" : "gradient") : "none") +
           '\n';
  }
  return out;
}

std::string TrialsCsv(const PlantModel& model, const MonteCarloReport& mc) {
  const auto names = model.param_names();
  std::string out = "trial";
  for (const auto& n : names) out += ",theta0_" + n;
  for (const auto& n : names) out += ",theta_hat_" + n;
  out += ",iterations,status\n";
  for (const auto& t : mc.trials) {
    out += std::to_string(t.trial);
    for (Eigen::Index i = 0; i < t.theta0.size(); ++i) out += ',' + FormatDouble(t.theta0[i]);
    for (size_t i = 0; i < names.size(); ++i) {
      const bool has = t.ok && t.estimate.theta_hat.size() == static_cast<Eigen::Index>(names.size());
      out += ',' + (has ? FormatDouble(t.estimate.theta_hat[static_cast<Eigen::Index>(i)]) : "nan");
    }
    out += ',' + std::to_string(t.ok ? t.estimate.iterations : 0) + ',' +
           (t.ok ? t.estimate.status : "failed") + '\n';
  }
  return out;
}

// Per-parameter Monte-Carlo statistics next to the bound.
std::string MonteCarloSummaryCsv(const PlantModel& model, const Eigen::VectorXd& theta_true,
                                 const MonteCarloReport& mc, const Eigen::MatrixXd& crb) {
  const auto names = model.param_names();
  std::string out = "param,true,mean,variance,crb_variance\n";
  for (size_t i = 0; i < names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out += names[i] + ',' + FormatDouble(theta_true[k]) + ',' + FormatDouble(mc.mean[k]) + ',' +
           FormatDouble(mc.covariance(k, k)) + ',' + FormatDouble(crb(k, k)) + '\n';
  }
  return out;
}

MonteCarloReport RunMonteCarlo(const Experiment& ex, const ExtendedTrajectory& eta) {
  const ExperimentConfig& c = ex.config;
  MonteCarloOptions opts;
  opts.trials = c.trials;
  opts.rate_hz = c.rate_hz;
  opts.seed = c.seed;
  opts.threads = c.threads;
  opts.estimator = c.estimator;
  return monte_carlo(ex.estimation(eta), c.theta_true,
                     uniform_relative_sampler(c.theta_true, c.theta0_spread),
                     MeasurementNoise(c.sigma), opts);
}

// CRB with the singular case reported in terms of parameter names.
Eigen::MatrixXd NamedCramerRao(const PlantModel& model, const InfoMatrix& info) {
  try {
    return cramer_rao(info);
  } catch (const SingularInformationError& e) {
    throw SingularInformationError(
        "no information about the parameter direction [" +
            NamedDirection(model, e.null_direction()) + "] (lambda_min = " +
            FormatDouble(info.lambda_min()) + ")",
        e.null_direction());
  }
}

WorkflowOutput Simulate(const Experiment& ex, Sink& out) {
  out.write("trajectory.csv", TrajectoryCsv(ex, ex.initial));
  const Eigen::VectorXd xf = ex.initial.state(ex.problem.span.tf, ex.model->state_dim());
  out.summary() << "simulated " << ex.model->name() << " over [" << FormatDouble(ex.problem.span.t0)
                << ", " << FormatDouble(ex.problem.span.tf) << "] s\n"
                << "final state: " << Join(xf) << "\n";
  return out.finish();
}

WorkflowOutput Optimize(const Experiment& ex, Sink& out) {
  const OptimizerResult r = optimize(ex.problem, ex.initial, ex.config.optimizer);
  out.write("trace.csv", trace_to_csv(r.trace));
  out.write("optimized_control.csv", ControlCsv(ex, r.eta));
  out.write("optimized_trajectory.csv", TrajectoryCsv(ex, r.eta));
  const IterationRecord& first = r.trace.front();
  const IterationRecord& last = r.trace.back();
  out.summary() << "status: " << r.status << " after " << r.iterations << " iterations\n"
                << "J: " << FormatDouble(first.J) << " -> " << FormatDouble(last.J) << "\n"
                << "lambda_min: " << FormatDouble(first.lambda_min) << " -> "
                << FormatDouble(last.lambda_min) << " (x"
                << FormatDouble(last.lambda_min / first.lambda_min) << ")\n"
                << "final |dJ.zeta|: " << FormatDouble(std::abs(last.dJ_zeta)) << "\n";
  return out.finish();
}

WorkflowOutput Estimate(const Experiment& ex, Sink& out) {
  const ExperimentConfig& c = ex.config;
  const EstimationProblem prob = ex.estimation(ex.initial);
  const MeasurementNoise sigma(c.sigma);
  MeasurementSet meas;
  if (c.measurements_csv.empty()) {
    meas = synthesize_measurements(prob, c.theta_true, c.rate_hz, sigma, c.seed);
    out.write("measurements.csv", measurements_to_csv(meas));
  } else {
    meas = measurements_from_csv(io::read_file(c.measurements_csv), sigma);
  }
  const EstimationResult r = estimate(prob, c.theta0, meas, c.estimator);
  out.write("estimate_trace.csv", EstimateTraceCsv(r));
  const auto names = ex.model->param_names();
  std::string est = "param,theta0,theta_hat\n";
  for (size_t i = 0; i < names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    est += names[i] + ',' + FormatDouble(c.theta0[k]) + ',' + FormatDouble(r.theta_hat[k]) + '\n';
  }
  out.write("estimate.csv", est);
  out.summary() << "status: " << r.status << " after " << r.iterations << " iterations\n"
                << "theta_hat: [" << NamedDirection(*ex.model, r.theta_hat) << "]\n"
                << "beta: " << FormatDouble(r.cost_trace.front()) << " -> "
                << FormatDouble(r.cost_trace.back()) << "\n";
  if (r.status == "LinesearchFailed") {
    throw Error(ErrorCode::kLinesearchFailed, "estimator line search failed; see estimate_trace.csv");
  }
  return out.finish();
}

WorkflowOutput MonteCarlo(const Experiment& ex, Sink& out) {
  const MonteCarloReport mc = RunMonteCarlo(ex, ex.initial);
  const Eigen::MatrixXd crb = NamedCramerRao(*ex.model, ex.discrete_information(ex.initial));
  out.write("montecarlo_trials.csv", TrialsCsv(*ex.model, mc));
  out.write("montecarlo_summary.csv", MonteCarloSummaryCsv(*ex.model, ex.config.theta_true, mc, crb));
  out.write("montecarlo_covariance.csv", io::matrix_csv(mc.covariance));
  out.summary() << "trials: " << mc.trials.size() << ", " << mc.used << " in statistics, "
                << mc.failed << " failed, " << mc.unconverged << " unconverged\n"
                << "mean: [" << NamedDirection(*ex.model, mc.mean) << "]\n"
                << "variance: [" << NamedDirection(*ex.model, mc.covariance.diagonal()) << "]\n"
                << "crb variance: [" << NamedDirection(*ex.model, crb.diagonal()) << "]\n";
  return out.finish();
}

WorkflowOutput Crb(const Experiment& ex, Sink& out) {
  const InfoMatrix continuous = trajectory_information(ex.problem, ex.initial);
  const InfoMatrix discrete = ex.discrete_information(ex.initial);
  out.write("fim_continuous.csv", info_matrix_csv(continuous));
  out.write("fim_discrete.csv", info_matrix_csv(discrete));
  out.write("fim_summary.json", info_matrix_summary_json(discrete));
  const Eigen::MatrixXd crb = NamedCramerRao(*ex.model, discrete);
  out.write("crb.csv", io::matrix_csv(crb));
  out.summary() << "discrete FIM eigenvalues: [" << Join(discrete.eigenvalues()) << "]\n"
                << "crb variances: [" << NamedDirection(*ex.model, crb.diagonal()) << "]\n";
  return out.finish();
}

struct Column {
  double J = 0, lambda_min = 0, lambda_max = 0, discrete_min = 0, discrete_max = 0;
  Eigen::MatrixXd crb;
  MonteCarloReport mc;
};

Column Analyze(const Experiment& ex, const ExtendedTrajectory& eta) {
  Column c;
  const ObjectiveValue v = objective(ex.problem, eta);
  c.J = v.J;
  c.lambda_min = v.info.lambda_min();
  c.lambda_max = v.info.lambda_max();
  const InfoMatrix d = ex.discrete_information(eta);
  c.discrete_min = d.lambda_min();
  c.discrete_max = d.lambda_max();
  c.crb = NamedCramerRao(*ex.model, d);
  c.mc = RunMonteCarlo(ex, eta);
  return c;
}

WorkflowOutput Report(const Experiment& ex, Sink& out) {
  const OptimizerResult r = optimize(ex.problem, ex.initial, ex.config.optimizer);
  out.write("trace.csv", trace_to_csv(r.trace));
  out.write("optimized_control.csv", ControlCsv(ex, r.eta));
  const Column a = Analyze(ex, ex.initial);
  const Column b = Analyze(ex, r.eta);
  const auto names = ex.model->param_names();

  // improvement: optimized / initial for eigenvalues, initial / optimized for
  // costs and variances.
  std::string table = "quantity,initial,optimized,improvement\n";
  auto row = [&](const std::string& q, double x, double y, bool larger_is_better) {
    table += q + ',' + FormatDouble(x) + ',' + FormatDouble(y) + ',' +
             FormatDouble(larger_is_better ? y / x : x / y) + '\n';
  };
  row("J", a.J, b.J, false);
  row("lambda_min", a.lambda_min, b.lambda_min, true);
  row("lambda_max", a.lambda_max, b.lambda_max, true);
  row("lambda_min_discrete", a.discrete_min, b.discrete_min, true);
  row("lambda_max_discrete", a.discrete_max, b.discrete_max, true);
  for (size_t i = 0; i < names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    row("mc_mean_" + names[i], a.mc.mean[k], b.mc.mean[k], true);
    row("mc_variance_" + names[i], a.mc.covariance(k, k), b.mc.covariance(k, k), false);
    row("crb_variance_" + names[i], a.crb(k, k), b.crb(k, k), false);
  }
  out.write("report.csv", table);
  out.write("crb_initial.csv", io::matrix_csv(a.crb));
  out.write("crb_optimized.csv", io::matrix_csv(b.crb));
  out.write("mc_covariance_initial.csv", io::matrix_csv(a.mc.covariance));
  out.write("mc_covariance_optimized.csv", io::matrix_csv(b.mc.covariance));
  out.write("montecarlo_initial.csv",
            MonteCarloSummaryCsv(*ex.model, ex.config.theta_true, a.mc, a.crb));
  out.write("montecarlo_optimized.csv",
            MonteCarloSummaryCsv(*ex.model, ex.config.theta_true, b.mc, b.crb));

  std::ostringstream& s = out.summary();
  s << "optimizer: " << r.status << " after " << r.iterations << " iterations\n";
  s << "                     initial            optimized\n";
  auto line = [&](const std::string& q, double x, double y) {
    std::string label = q;
    label.resize(std::max<size_t>(label.size(), 20), ' ');
    std::string left = FormatDouble(x);
    left.resize(std::max<size_t>(left.size(), 18), ' ');
    s << label << ' ' << left << ' ' << FormatDouble(y) << '\n';
  };
  line("J", a.J, b.J);
  line("lambda_min", a.lambda_min, b.lambda_min);
  line("lambda_max", a.lambda_max, b.lambda_max);
  for (size_t i = 0; i < names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    line("mc var " + names[i], a.mc.covariance(k, k), b.mc.covariance(k, k));
    line("crb var " + names[i], a.crb(k, k), b.crb(k, k));
  }
  s << "lambda_min ratio: " << FormatDouble(b.lambda_min / a.lambda_min) << '\n';
  s << "monte-carlo trials used: " << a.mc.used << " initial, " << b.mc.used << " optimized\n";
  return out.finish();
}

}  // namespace

Experiment::Experiment(const ExperimentConfig& cfg) : config(cfg) {
  config.validate();
  model = make_model(config);
  const int n = model->state_dim(), m = model->input_dim(), p = model->param_dim();
  TrajectoryProblem& prob = problem;
  prob.model = model.get();
  prob.theta = config.theta0;
  prob.x0 = config.initial_state;
  prob.span = {0.0, config.horizon};
  prob.control_dt = config.control_dt;
  prob.sigma = MeasurementNoise(config.sigma);
  prob.integrator = config.integrator;
  Weights& w = prob.weights;
  w = Weights::Defaults(n, m, p);
  w.Q_p = config.Q_p;
  w.Q_tau = config.Q_tau_diag.asDiagonal();
  w.R_tau = config.R_tau_diag.asDiagonal();
  w.Q_n *= config.Q_n_scale;
  w.R_n *= config.R_n_scale;
  w.Q_K.topLeftCorner(n, n) = config.Q_K_diag.asDiagonal();
  w.R_K = config.R_K_diag.asDiagonal();

  DenseTrajectory u;
  if (!config.control_csv.empty()) {
    const DenseTrajectory given =
        io::table_to_linear(io::parse_csv(io::read_file(config.control_csv)), m);
    if (given.t0() > prob.span.t0 || given.tf() < prob.span.tf) {
      throw Error(ErrorCode::kConfigError,
                  "control_csv does not cover [0, " + FormatDouble(config.horizon) + "]");
    }
    u = control_on_grid(prob, [&](double t) { return given.eval(t); });
  } else {
    const double a = config.control_amplitude;
    const double omega = 2.0 * std::numbers::pi * config.control_frequency_hz;
    u = control_on_grid(prob, [&](double t) {
      return Eigen::VectorXd::Constant(m, a * std::sin(omega * t));
    });
  }
  initial = simulate_extended(prob, u);
  if (config.perturb_amplitude != 0.0) {
    initial = perturb_initial(prob, initial, config.perturb_amplitude, config.perturb_frequency_hz);
  }
  prob.x_desired = initial.xbar.block(0, n);
}

EstimationProblem Experiment::estimation(const ExtendedTrajectory& eta) const {
  EstimationProblem e;
  e.model = model.get();
  e.u = eta.u;
  e.x0 = config.initial_state;
  e.integrator = config.integrator;
  return e;
}

InfoMatrix Experiment::discrete_information(const ExtendedTrajectory& eta) const {
  const int n = model->state_dim(), p = model->param_dim();
  const std::vector<double> times = sample_times(problem.span, config.rate_hz);
  return fim_discrete(*model, eta.xbar.block(0, n), eta.u, problem.theta,
                      eta.xbar.block(n, n * p), times, problem.sigma);
}

const std::vector<std::string>& workflow_names() {
  static const std::vector<std::string> names{"simulate",   "optimize", "estimate",
                                              "montecarlo", "crb",      "report"};
  return names;
}

WorkflowOutput run_workflow(const std::string& name, const ExperimentConfig& config) {
  using Fn = WorkflowOutput (*)(const Experiment&, Sink&);
  Fn fn = nullptr;
  if (name == "simulate") fn = Simulate;
  if (name == "optimize") fn = Optimize;
  if (name == "estimate") fn = Estimate;
  if (name == "montecarlo") fn = MonteCarlo;
  if (name == "crb") fn = Crb;
  if (name == "report") fn = Report;
  if (!fn) throw Error(ErrorCode::kConfigError, "unknown workflow '" + name + "'");

  const Experiment ex(config);
  Sink out(config.output_dir);
  out.write("effective_config.json", config_to_json(ex.config));
  return fn(ex, out);
}

int exit_code_for(ErrorCode code) { return IsNumericalError(code) ? 3 : 2; }

}  // namespace fimax
