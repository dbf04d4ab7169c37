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
#include <map>
#include <sstream>

#include "fimax/error.hpp"
#include "fimax/model.hpp"
#include "fimax/numkit.hpp"

namespace fimax {
namespace {

constexpr double kStep = 1e-5;

Eigen::VectorXd Flatten(const Eigen::MatrixXd& m) {
  // Row-major so that entry (i, j) lands at i * cols + j.
  Eigen::VectorXd out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
  return out;
}

double RelError(double max_diff, double scale) { return max_diff / std::max(scale, 1e-8); }

double Compare(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& fd) {
  const double scale = std::max(analytic.cwiseAbs().maxCoeff(), fd.cwiseAbs().maxCoeff());
  return RelError((analytic - fd).cwiseAbs().maxCoeff(), scale);
}

// fd(i * d1 + j, k) against analytic(i, j, k), optionally with the last two
// analytic indices swapped.
double Compare(const Tensor3& analytic, const Eigen::MatrixXd& fd, bool swap_last = false) {
  double diff = 0.0, scale = 0.0;
  const int d0 = analytic.dim0();
  const int d1 = swap_last ? analytic.dim2() : analytic.dim1();
  const int d2 = swap_last ? analytic.dim1() : analytic.dim2();
  for (int i = 0; i < d0; ++i) {
    for (int j = 0; j < d1; ++j) {
      for (int k = 0; k < d2; ++k) {
        const double a = swap_last ? analytic(i, k, j) : analytic(i, j, k);
        const double f = fd(i * d1 + j, k);
        diff = std::max(diff, std::abs(a - f));
        scale = std::max({scale, std::abs(a), std::abs(f)});
      }
    }
  }
  return RelError(diff, scale);
}

}  // namespace

ValidationReport validate_derivatives(const PlantModel& model, int samples, uint64_t seed,
                                      double tolerance, bool no_throw) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  const int n = model.state_dim(), m = model.input_dim(), p = model.param_dim();
  const int h = model.output_dim();
  std::mt19937_64 rng(seed);

  std::vector<std::string> order;
  std::map<std::string, DerivativeCheck> checks;
  auto record = [&](const std::string& name, double err, const ModelPoint& pt) {
    auto [it, inserted] = checks.try_emplace(name);
    if (inserted) {
      order.push_back(name);
      it->second.name = name;
    }
    if (inserted || err > it->second.max_rel_error) {
      it->second.max_rel_error = err;
      it->second.worst_point = pt;
    }
  };

  DynamicsDerivatives dd;
  OutputDerivatives od;
  for (int s = 0; s < samples; ++s) {
    const ModelPoint pt = model.sample_point(rng);
    model.dynamics_derivatives(pt.x, pt.u, pt.theta, DerivativeOrder::kSecond, dd);
    model.output_derivatives(pt.x, pt.u, pt.theta, od);

    auto f_of_x = [&](const Eigen::VectorXd& x) { return eval_dynamics(model, x, pt.u, pt.theta); };
    auto f_of_u = [&](const Eigen::VectorXd& u) { return eval_dynamics(model, pt.x, u, pt.theta); };
    auto f_of_t = [&](const Eigen::VectorXd& t) { return eval_dynamics(model, pt.x, pt.u, t); };
    record("D_x f", Compare(dd.fx, fd_jacobian(f_of_x, pt.x, kStep)), pt);
    record("D_u f", Compare(dd.fu, fd_jacobian(f_of_u, pt.u, kStep)), pt);
    record("D_theta f", Compare(dd.ftheta, fd_jacobian(f_of_t, pt.theta, kStep)), pt);

    DynamicsDerivatives tmp;
    auto fx_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& t) {
      model.dynamics_derivatives(x, u, t, DerivativeOrder::kFirst, tmp);
      return Flatten(tmp.fx);
    };
    auto ftheta_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& t) {
      model.dynamics_derivatives(x, u, t, DerivativeOrder::kFirst, tmp);
      return Flatten(tmp.ftheta);
    };
    record("D2_x f",
           Compare(dd.fxx, fd_jacobian([&](const Eigen::VectorXd& v) { return fx_at(v, pt.u, pt.theta); },
                                       pt.x, kStep)),
           pt);
    record("D_theta D_x f",
           Compare(dd.fxtheta,
                   fd_jacobian([&](const Eigen::VectorXd& v) { return fx_at(pt.x, pt.u, v); },
                               pt.theta, kStep)),
           pt);
    record("D_x D_theta f",
           Compare(dd.fxtheta,
                   fd_jacobian([&](const Eigen::VectorXd& v) { return ftheta_at(v, pt.u, pt.theta); },
                               pt.x, kStep),
                   /*swap_last=*/true),
           pt);
    record("D2_theta f",
           Compare(dd.fthetatheta,
                   fd_jacobian([&](const Eigen::VectorXd& v) { return ftheta_at(pt.x, pt.u, v); },
                               pt.theta, kStep)),
           pt);
    record("D_u D_x f",
           Compare(dd.fxu, fd_jacobian([&](const Eigen::VectorXd& v) { return fx_at(pt.x, v, pt.theta); },
                                       pt.u, kStep)),
           pt);
    record("D_u D_theta f",
           Compare(dd.fthetau,
                   fd_jacobian([&](const Eigen::VectorXd& v) { return ftheta_at(pt.x, v, pt.theta); },
                               pt.u, kStep)),
           pt);

    auto g_of_x = [&](const Eigen::VectorXd& x) { return eval_output(model, x, pt.u, pt.theta); };
    auto g_of_t = [&](const Eigen::VectorXd& t) { return eval_output(model, pt.x, pt.u, t); };
    record("D_x g", Compare(od.gx, fd_jacobian(g_of_x, pt.x, kStep)), pt);
    record("D_theta g", Compare(od.gtheta, fd_jacobian(g_of_t, pt.theta, kStep)), pt);

    OutputDerivatives otmp;
    auto gx_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& t) {
      model.output_derivatives(x, pt.u, t, otmp);
      return Flatten(otmp.gx);
    };
    auto gtheta_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& t) {
      model.output_derivatives(x, pt.u, t, otmp);
      return Flatten(otmp.gtheta);
    };
    record("D2_x g",
           Compare(od.gxx, fd_jacobian([&](const Eigen::VectorXd& v) { return gx_at(v, pt.theta); },
                                       pt.x, kStep)),
           pt);
    record("D_x D_theta g",
           Compare(od.gxtheta, fd_jacobian([&](const Eigen::VectorXd& v) { return gx_at(pt.x, v); },
                                           pt.theta, kStep)),
           pt);
    record("D2_theta g",
           Compare(od.gthetatheta,
                   fd_jacobian([&](const Eigen::VectorXd& v) { return gtheta_at(pt.x, v); },
                               pt.theta, kStep)),
           pt);
    (void)n;
    (void)m;
    (void)p;
    (void)h;
  }

  ValidationReport report;
  report.tolerance = tolerance;
  for (const auto& name : order) {
    report.checks.push_back(checks[name]);
    if (!(checks[name].max_rel_error < tolerance)) report.passed = false;
  }
  if (!report.passed && !no_throw) {
    for (const auto& c : report.checks) {
      if (c.max_rel_error < tolerance) continue;
      std::ostringstream msg;
      msg << model.name() << ": " << c.name << " relative error " << c.max_rel_error
          << " exceeds " << tolerance << " at x=[" << c.worst_point.x.transpose() << "] u=["
          << c.worst_point.u.transpose() << "] theta=[" << c.worst_point.theta.transpose() << "]";
      throw Error(ErrorCode::kValidationFailed, msg.str());
    }
  }
  return report;
}

}  // namespace fimax
