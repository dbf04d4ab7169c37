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
#include <numeric>
#include <sstream>

#include "fimax/error.hpp"
#include "fimax/numkit.hpp"

namespace fimax {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller constants.
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafe = 0.9;
constexpr double kMaxGrow = 10.0;
constexpr double kMaxShrink = 5.0;

}  // namespace

void IntegratorConfig::validate() const {
  const bool ok = rel_tol > 0 && abs_tol > 0 && h_min > 0 && h_min <= h_init &&
                  h_init <= h_max && max_steps > 0 && std::isfinite(h_max);
  if (!ok) {
    std::ostringstream msg;
    msg << "invalid integrator config (rel_tol=" << rel_tol << ", abs_tol=" << abs_tol
        << ", h_min=" << h_min << ", h_init=" << h_init << ", h_max=" << h_max
        << ", max_steps=" << max_steps << ")";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

double IntegrationStats::min_step() const {
  if (step_sizes.empty()) return 0.0;
  return *std::min_element(step_sizes.begin(), step_sizes.end());
}

double IntegrationStats::mean_step() const {
  if (step_sizes.empty()) return 0.0;
  return std::accumulate(step_sizes.begin(), step_sizes.end(), 0.0) /
         static_cast<double>(step_sizes.size());
}

double IntegrationStats::stddev_step() const {
  if (step_sizes.size() < 2) return 0.0;
  const double mean = mean_step();
  double acc = 0.0;
  for (double h : step_sizes) acc += (h - mean) * (h - mean);
  return std::sqrt(acc / static_cast<double>(step_sizes.size() - 1));
}

DenseTrajectory integrate(const VectorField& field, const Eigen::VectorXd& x0,
                          TimeSpan span, const IntegratorConfig& cfg,
                          std::span<const double> breakpoints, IntegrationStats* stats) {
  cfg.validate();
  if (!std::isfinite(span.t0) || !std::isfinite(span.tf)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite integration span");
  }
  if (!x0.allFinite()) throw Error(ErrorCode::kNonFiniteState, "initial state is not finite");

  const Eigen::Index dim = x0.size();
  const double dir = span.tf >= span.t0 ? 1.0 : -1.0;
  const double total = std::abs(span.tf - span.t0);
  const double snap =
      1e-13 * std::max({1.0, std::abs(span.t0), std::abs(span.tf)});

  IntegrationStats local;
  IntegrationStats& st = stats ? *stats : local;
  st = IntegrationStats{};

  Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Eigen::VectorXd ytmp(dim), ynew(dim), err_vec(dim);

  std::vector<double> times{span.t0};
  std::vector<Eigen::VectorXd> ys{x0};
  field(span.t0, x0, k1);
  ++st.evaluations;
  std::vector<Eigen::VectorXd> fs{k1};

  if (total == 0.0) return DenseTrajectory::Hermite(times, ys, fs);

  // Stops strictly inside the span, in integration order, then the end point.
  std::vector<double> stops;
  for (double bp : breakpoints) {
    if (dir * (bp - span.t0) > snap && dir * (span.tf - bp) > snap) stops.push_back(bp);
  }
  if (dir > 0) {
    std::sort(stops.begin(), stops.end());
  } else {
    std::sort(stops.begin(), stops.end(), std::greater<>());
  }
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [&](double a, double b) { return std::abs(a - b) <= snap; }),
              stops.end());
  stops.push_back(span.tf);

  double t = span.t0;
  Eigen::VectorXd y = x0;
  double h = std::min({cfg.h_init, cfg.h_max, total});
  double facold = 1e-4;
  bool last_rejected = false;
  size_t stop_idx = 0;
  long attempts = 0;

  while (stop_idx < stops.size()) {
    const double target = stops[stop_idx];
    const double remaining = dir * (target - t);
    double hs = h;
    bool lands = false;
    if (hs * 1.01 >= remaining) {
      hs = remaining;
      lands = true;
    }
    if (++attempts > cfg.max_steps) {
      std::ostringstream msg;
      msg << "exceeded " << cfg.max_steps << " steps at t=" << t;
      throw Error(ErrorCode::kMaxStepsExceeded, msg.str());
    }

    const double hd = dir * hs;
    ytmp = y + hd * (a21 * k1);
    field(t + c2 * hd, ytmp, k2);
    ytmp = y + hd * (a31 * k1 + a32 * k2);
    field(t + c3 * hd, ytmp, k3);
    ytmp = y + hd * (a41 * k1 + a42 * k2 + a43 * k3);
    field(t + c4 * hd, ytmp, k4);
    ytmp = y + hd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    field(t + c5 * hd, ytmp, k5);
    ytmp = y + hd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    const double t_new = lands ? target : t + hd;
    field(t_new, ytmp, k6);
    ynew = y + hd * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    field(t_new, ynew, k7);
    st.evaluations += 6;

    err_vec = hd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = err_vec[i] / sk;
      err += r * r;
    }
    err = dim > 0 ? std::sqrt(err / static_cast<double>(dim)) : 0.0;

    if (!std::isfinite(err) || !ynew.allFinite() || !k7.allFinite()) {
      ++st.rejected;
      h = hs * 0.25;
      last_rejected = true;
      if (h < cfg.h_min) {
        std::ostringstream msg;
        msg << "state became non-finite near t=" << t;
        throw Error(ErrorCode::kNonFiniteState, msg.str());
      }
      continue;
    }

    const double fac11 = std::pow(err, kExpo);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::clamp(fac / kSafe, 1.0 / kMaxGrow, kMaxShrink);
      double hnew = hs / fac;
      facold = std::max(err, 1e-4);
      if (last_rejected) hnew = std::min(hnew, hs);
      last_rejected = false;

      ++st.accepted;
      st.step_sizes.push_back(hs);
      t = t_new;
      y = ynew;
      times.push_back(t);
      ys.push_back(y);
      fs.push_back(k7);

      if (lands) {
        ++stop_idx;
        // A shortened landing step says nothing about the natural step size.
        if (hs < h) hnew = std::max(hnew, h);
        if (stop_idx < stops.size()) {
          field(t, y, k1);
          ++st.evaluations;
        }
      } else {
        k1 = k7;
      }
      h = std::min(hnew, cfg.h_max);
    } else {
      ++st.rejected;
      h = hs / std::min(kMaxShrink, fac11 / kSafe);
      last_rejected = true;
    }
    if (h < cfg.h_min) {
      std::ostringstream msg;
      msg << "required step " << h << " below h_min=" << cfg.h_min << " at t=" << t;
      throw Error(ErrorCode::kStepUnderflow, msg.str());
    }
  }

  if (dir < 0) {
    std::reverse(times.begin(), times.end());
    std::reverse(ys.begin(), ys.end());
    std::reverse(fs.begin(), fs.end());
  }
  return DenseTrajectory::Hermite(std::move(times), ys, fs);
}

}  // namespace fimax
