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
#include <cmath>
#include <filesystem>
#include <initializer_list>

#include "fimax/config.hpp"
#include "fimax/error.hpp"
#include "io/csv.hpp"
#include "json.hpp"

namespace fimax {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

void CheckKeys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) Fail(where + " must be an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) Fail("unknown key '" + where + "." + item.key() + "'");
  }
}

template <typename T>
void Read(const json& j, const char* key, const std::string& where, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    Fail("'" + where + "." + key + "' has the wrong type");
  }
}

void ReadVector(const json& j, const char* key, const std::string& where, Eigen::VectorXd& out) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  Read(j, key, where, v);
  out = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void ReadMatrix(const json& j, const char* key, const std::string& where, Eigen::MatrixXd& out) {
  if (!j.contains(key)) return;
  std::vector<std::vector<double>> rows;
  Read(j, key, where, rows);
  const size_t r = rows.size(), c = r ? rows[0].size() : 0;
  out.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) Fail("'" + where + "." + key + "' rows differ in length");
    for (size_t k = 0; k < c; ++k) out(i, k) = rows[i][k];
  }
}

std::vector<double> ToStd(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

ojson MatrixJson(const Eigen::MatrixXd& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

const char* MetricName(MetricScaling m) {
  return m == MetricScaling::kInformation ? "information" : "fixed";
}

void SetModelDefaults(ExperimentConfig& c) {
  const auto model = make_model(c);
  const int n = model->state_dim(), m = model->input_dim(), h = model->output_dim();
  if (c.model == "cart_double_pendulum") {
    c.theta_true = static_cast<const CartDoublePendulum&>(*model).nominal_theta();
    c.sigma = MeasurementNoise::CartDefault().sigma();
  } else {
    c.theta_true = Eigen::VectorXd::Constant(1, -0.5);
    c.sigma = 1e-4 * Eigen::MatrixXd::Identity(h, h);
  }
  c.theta0 = c.theta_true;
  c.initial_state = Eigen::VectorXd::Zero(n);
  c.Q_tau_diag = Eigen::VectorXd::Zero(n);
  c.R_tau_diag = Eigen::VectorXd::Constant(m, 0.1);
  c.Q_K_diag = Eigen::VectorXd::Ones(n);
  c.R_K_diag = Eigen::VectorXd::Ones(m);
}

void CheckSize(const Eigen::VectorXd& v, int expected, const char* name) {
  if (v.size() != expected) {
    Fail(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
         std::to_string(expected));
  }
}

void CheckFinite(double v, const char* name, bool positive) {
  if (!std::isfinite(v) || (positive ? !(v > 0) : !(v >= 0))) {
    Fail(std::string(name) + (positive ? " must be positive" : " must be non-negative"));
  }
}

}  // namespace

std::unique_ptr<PlantModel> make_model(const ExperimentConfig& config) {
  if (config.model == "linear_scalar") return std::make_unique<LinearScalarModel>();
  if (config.model != "cart_double_pendulum") Fail("unknown model '" + config.model + "'");
  CartParameterSet set;
  if (config.parameters == "m1_c") {
    set = CartParameterSet::kMassDamping;
  } else if (config.parameters == "m1_m2") {
    set = CartParameterSet::kTwoMass;
  } else {
    Fail("unknown parameter set '" + config.parameters + "' (use m1_c or m1_m2)");
  }
  try {
    return std::make_unique<CartDoublePendulum>(config.cart, set);
  } catch (const Error& e) {
    Fail(e.what());
  }
}

void ExperimentConfig::validate() const {
  const auto m = make_model(*this);
  const int n = m->state_dim(), p = m->param_dim(), h = m->output_dim();
  CheckSize(theta_true, p, "theta_true");
  CheckSize(theta0, p, "theta0");
  CheckSize(initial_state, n, "initial_state");
  CheckSize(Q_tau_diag, n, "weights.Q_tau_diag");
  CheckSize(R_tau_diag, m->input_dim(), "weights.R_tau_diag");
  CheckSize(Q_K_diag, n, "weights.Q_K_diag");
  CheckSize(R_K_diag, m->input_dim(), "weights.R_K_diag");
  if (sigma.rows() != h || sigma.cols() != h) {
    Fail("sigma must be " + std::to_string(h) + "x" + std::to_string(h));
  }
  if (!theta_true.allFinite() || !theta0.allFinite() || !initial_state.allFinite()) {
    Fail("theta_true, theta0 and initial_state must be finite");
  }
  CheckFinite(horizon, "horizon", true);
  CheckFinite(rate_hz, "rate_hz", true);
  CheckFinite(control_dt, "initial_control.control_dt", true);
  if (!std::isfinite(control_amplitude) || !std::isfinite(perturb_amplitude)) {
    Fail("control amplitudes must be finite");
  }
  CheckFinite(control_frequency_hz, "initial_control.frequency_hz", false);
  CheckFinite(perturb_frequency_hz, "perturb.frequency_hz", false);
  CheckFinite(Q_p, "weights.Q_p", false);
  CheckFinite(Q_n_scale, "weights.Q_n_scale", false);
  CheckFinite(R_n_scale, "weights.R_n_scale", true);
  if ((Q_tau_diag.array() < 0).any() || (Q_K_diag.array() < 0).any()) {
    Fail("Q_tau_diag and Q_K_diag must be non-negative");
  }
  if (!(R_tau_diag.array() > 0).all() || !(R_K_diag.array() > 0).all()) {
    Fail("R_tau_diag and R_K_diag must be positive");
  }
  CheckFinite(optimizer.tol, "optimizer.tol", true);
  CheckFinite(estimator.tol, "estimator.tol", true);
  if (optimizer.max_iter < 0 || estimator.max_iter < 0) Fail("max_iter must be non-negative");
  if (trials < 2) Fail("montecarlo.trials must be at least 2");
  CheckFinite(theta0_spread, "montecarlo.theta0_spread", false);
  if (threads < 0) Fail("montecarlo.threads must be non-negative");
  if (output_dir.empty()) Fail("output_dir must not be empty");
  try {
    integrator.validate();
    MeasurementNoise check(sigma);
    (void)check;
  } catch (const Error& e) {
    Fail(e.what());
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(std::string("invalid JSON: ") + e.what());
  }
  CheckKeys(j, "config",
            {"model", "theta_true", "theta0", "horizon", "rate_hz", "sigma", "initial_state",
             "initial_control", "perturb", "trajectory", "weights", "integrator", "optimizer",
             "estimator", "montecarlo", "seed", "output_dir"});

  ExperimentConfig c;
  if (j.contains("model")) {
    const json& m = j["model"];
    CheckKeys(m, "model", {"name", "parameters", "constants"});
    Read(m, "name", "model", c.model);
    Read(m, "parameters", "model", c.parameters);
    if (m.contains("constants")) {
      const json& k = m["constants"];
      CheckKeys(k, "model.constants",
                {"m1", "m2", "length1", "length2", "width1", "width2", "bearing_offset", "com1",
                 "com2", "damping", "gravity"});
      const std::string w = "model.constants";
      Read(k, "m1", w, c.cart.m1);
      Read(k, "m2", w, c.cart.m2);
      Read(k, "length1", w, c.cart.length1);
      Read(k, "length2", w, c.cart.length2);
      Read(k, "width1", w, c.cart.width1);
      Read(k, "width2", w, c.cart.width2);
      Read(k, "bearing_offset", w, c.cart.bearing_offset);
      Read(k, "com1", w, c.cart.com1);
      Read(k, "com2", w, c.cart.com2);
      Read(k, "damping", w, c.cart.damping);
      Read(k, "gravity", w, c.cart.gravity);
    }
  }
  SetModelDefaults(c);

  const std::string top = "config";
  ReadVector(j, "theta_true", top, c.theta_true);
  c.theta0 = c.theta_true;
  ReadVector(j, "theta0", top, c.theta0);
  Read(j, "horizon", top, c.horizon);
  Read(j, "rate_hz", top, c.rate_hz);
  ReadMatrix(j, "sigma", top, c.sigma);
  ReadVector(j, "initial_state", top, c.initial_state);
  Read(j, "seed", top, c.seed);
  Read(j, "output_dir", top, c.output_dir);

  if (j.contains("initial_control")) {
    const json& s = j["initial_control"];
    CheckKeys(s, "initial_control", {"amplitude", "frequency_hz", "control_dt"});
    Read(s, "amplitude", "initial_control", c.control_amplitude);
    Read(s, "frequency_hz", "initial_control", c.control_frequency_hz);
    Read(s, "control_dt", "initial_control", c.control_dt);
  }
  if (j.contains("perturb")) {
    const json& s = j["perturb"];
    CheckKeys(s, "perturb", {"amplitude", "frequency_hz"});
    Read(s, "amplitude", "perturb", c.perturb_amplitude);
    Read(s, "frequency_hz", "perturb", c.perturb_frequency_hz);
  }
  if (j.contains("trajectory")) {
    CheckKeys(j["trajectory"], "trajectory", {"control_csv"});
    Read(j["trajectory"], "control_csv", "trajectory", c.control_csv);
  }
  if (j.contains("weights")) {
    const json& s = j["weights"];
    const std::string w = "weights";
    CheckKeys(s, w,
              {"Q_p", "Q_tau_diag", "R_tau_diag", "Q_n_scale", "R_n_scale", "Q_K_diag",
               "R_K_diag"});
    Read(s, "Q_p", w, c.Q_p);
    ReadVector(s, "Q_tau_diag", w, c.Q_tau_diag);
    ReadVector(s, "R_tau_diag", w, c.R_tau_diag);
    Read(s, "Q_n_scale", w, c.Q_n_scale);
    Read(s, "R_n_scale", w, c.R_n_scale);
    ReadVector(s, "Q_K_diag", w, c.Q_K_diag);
    ReadVector(s, "R_K_diag", w, c.R_K_diag);
  }
  if (j.contains("integrator")) {
    const json& s = j["integrator"];
    const std::string w = "integrator";
    CheckKeys(s, w, {"rel_tol", "abs_tol", "h_min", "h_init", "h_max", "max_steps"});
    Read(s, "rel_tol", w, c.integrator.rel_tol);
    Read(s, "abs_tol", w, c.integrator.abs_tol);
    Read(s, "h_min", w, c.integrator.h_min);
    Read(s, "h_init", w, c.integrator.h_init);
    Read(s, "h_max", w, c.integrator.h_max);
    Read(s, "max_steps", w, c.integrator.max_steps);
  }
  if (j.contains("optimizer")) {
    const json& s = j["optimizer"];
    const std::string w = "optimizer";
    CheckKeys(s, w,
              {"tol", "max_iter", "metric", "record_wall_time", "armijo_c1", "armijo_backtrack",
               "armijo_max_backtracks"});
    Read(s, "tol", w, c.optimizer.tol);
    Read(s, "max_iter", w, c.optimizer.max_iter);
    std::string metric = MetricName(c.optimizer.metric);
    Read(s, "metric", w, metric);
    if (metric == "fixed") {
      c.optimizer.metric = MetricScaling::kFixed;
    } else if (metric == "information") {
      c.optimizer.metric = MetricScaling::kInformation;
    } else {
      Fail("optimizer.metric must be 'fixed' or 'information'");
    }
    Read(s, "record_wall_time", w, c.optimizer.record_wall_time);
    Read(s, "armijo_c1", w, c.optimizer.armijo.c1);
    Read(s, "armijo_backtrack", w, c.optimizer.armijo.backtrack);
    Read(s, "armijo_max_backtracks", w, c.optimizer.armijo.max_backtracks);
  }
  if (j.contains("estimator")) {
    const json& s = j["estimator"];
    const std::string w = "estimator";
    CheckKeys(s, w, {"tol", "max_iter", "c1", "backtrack", "max_backtracks", "measurements_csv"});
    Read(s, "tol", w, c.estimator.tol);
    Read(s, "max_iter", w, c.estimator.max_iter);
    Read(s, "c1", w, c.estimator.c1);
    Read(s, "backtrack", w, c.estimator.backtrack);
    Read(s, "max_backtracks", w, c.estimator.max_backtracks);
    Read(s, "measurements_csv", w, c.measurements_csv);
  }
  if (j.contains("montecarlo")) {
    const json& s = j["montecarlo"];
    CheckKeys(s, "montecarlo", {"trials", "theta0_spread", "threads"});
    Read(s, "trials", "montecarlo", c.trials);
    Read(s, "theta0_spread", "montecarlo", c.theta0_spread);
    Read(s, "threads", "montecarlo", c.threads);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    Fail(e.what());
  }
  ExperimentConfig c = parse_config(text);
  // Data files are resolved against the directory of the config file.
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  for (std::string* file : {&c.control_csv, &c.measurements_csv}) {
    if (!file->empty() && std::filesystem::path(*file).is_relative()) {
      *file = (base / *file).lexically_normal().string();
    }
  }
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  ojson j;
  j["model"] = {{"name", c.model},
                {"parameters", c.parameters},
                {"constants",
                 {{"m1", c.cart.m1},
                  {"m2", c.cart.m2},
                  {"length1", c.cart.length1},
                  {"length2", c.cart.length2},
                  {"width1", c.cart.width1},
                  {"width2", c.cart.width2},
                  {"bearing_offset", c.cart.bearing_offset},
                  {"com1", c.cart.com1},
                  {"com2", c.cart.com2},
                  {"damping", c.cart.damping},
                  {"gravity", c.cart.gravity}}}};
  j["theta_true"] = ToStd(c.theta_true);
  j["theta0"] = ToStd(c.theta0);
  j["horizon"] = c.horizon;
  j["rate_hz"] = c.rate_hz;
  j["sigma"] = MatrixJson(c.sigma);
  j["initial_state"] = ToStd(c.initial_state);
  j["initial_control"] = {{"amplitude", c.control_amplitude},
                          {"frequency_hz", c.control_frequency_hz},
                          {"control_dt", c.control_dt}};
  j["perturb"] = {{"amplitude", c.perturb_amplitude}, {"frequency_hz", c.perturb_frequency_hz}};
  j["trajectory"] = {{"control_csv", c.control_csv}};
  j["weights"] = {{"Q_p", c.Q_p},
                  {"Q_tau_diag", ToStd(c.Q_tau_diag)},
                  {"R_tau_diag", ToStd(c.R_tau_diag)},
                  {"Q_n_scale", c.Q_n_scale},
                  {"R_n_scale", c.R_n_scale},
                  {"Q_K_diag", ToStd(c.Q_K_diag)},
                  {"R_K_diag", ToStd(c.R_K_diag)}};
  j["integrator"] = {{"rel_tol", c.integrator.rel_tol},   {"abs_tol", c.integrator.abs_tol},
                     {"h_min", c.integrator.h_min},       {"h_init", c.integrator.h_init},
                     {"h_max", c.integrator.h_max},       {"max_steps", c.integrator.max_steps}};
  j["optimizer"] = {{"tol", c.optimizer.tol},
                    {"max_iter", c.optimizer.max_iter},
                    {"metric", MetricName(c.optimizer.metric)},
                    {"record_wall_time", c.optimizer.record_wall_time},
                    {"armijo_c1", c.optimizer.armijo.c1},
                    {"armijo_backtrack", c.optimizer.armijo.backtrack},
                    {"armijo_max_backtracks", c.optimizer.armijo.max_backtracks}};
  j["estimator"] = {{"tol", c.estimator.tol},
                    {"max_iter", c.estimator.max_iter},
                    {"c1", c.estimator.c1},
                    {"backtrack", c.estimator.backtrack},
                    {"max_backtracks", c.estimator.max_backtracks},
                    {"measurements_csv", c.measurements_csv}};
  j["montecarlo"] = {
      {"trials", c.trials}, {"theta0_spread", c.theta0_spread}, {"threads", c.threads}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

}  // namespace fimax
