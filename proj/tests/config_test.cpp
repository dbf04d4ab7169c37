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

#include <gtest/gtest.h>

#include "fimax/config.hpp"
#include "fimax/error.hpp"

namespace fimax {
namespace {

ErrorCode CodeOf(const std::string& json) {
  try {
    parse_config(json);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;  // sentinel: no error raised
}

TEST(Config, EmptyObjectGivesCartDefaults) {
  const ExperimentConfig c = parse_config("{}");
  EXPECT_EQ(c.model, "cart_double_pendulum");
  EXPECT_EQ(c.parameters, "m1_c");
  EXPECT_EQ(c.theta_true, Eigen::Vector2d(0.085, 0.50));
  EXPECT_EQ(c.theta0, c.theta_true);
  EXPECT_EQ(c.sigma(0, 0), 1.12e-4);
  EXPECT_EQ(c.sigma(1, 1), 4.79e-4);
  EXPECT_EQ(c.initial_state.size(), 6);
  EXPECT_EQ(c.horizon, 5.0);
  EXPECT_EQ(c.rate_hz, 30.0);
  EXPECT_EQ(c.Q_p, 10.0);
  EXPECT_EQ(c.optimizer.tol, 0.1);
  EXPECT_EQ(c.estimator.tol, 1e-8);
  EXPECT_EQ(make_model(c)->name(), "cart_double_pendulum");
}

TEST(Config, LinearScalarDefaults) {
  const ExperimentConfig c = parse_config(R"({"model": {"name": "linear_scalar"}})");
  EXPECT_EQ(c.theta_true.size(), 1);
  EXPECT_EQ(c.sigma.rows(), 1);
  EXPECT_EQ(make_model(c)->param_dim(), 1);
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_EQ(CodeOf(R"({"horizn": 5})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"optimizer": {"tolerance": 1}})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"model": {"constants": {"mass": 1}}})"), ErrorCode::kConfigError);
}

TEST(Config, BadValuesAreRejected) {
  EXPECT_EQ(CodeOf("not json"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"theta_true": [1, 2, 3]})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"horizon": -1})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"sigma": [[1, 0], [0, -1]]})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"model": {"parameters": "m2_c"}})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"optimizer": {"metric": "bogus"}})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"montecarlo": {"trials": 1}})"), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf(R"({"horizon": "five"})"), ErrorCode::kConfigError);
}

TEST(Config, JsonRoundTrip) {
  const ExperimentConfig c = parse_config(R"({
    "model": {"name": "cart_double_pendulum", "parameters": "m1_m2",
              "constants": {"damping": 0.0}},
    "theta_true": [0.09, 0.08],
    "seed": 18446744073709551615,
    "weights": {"Q_p": 3.5, "R_n_scale": 0.1},
    "optimizer": {"metric": "information"},
    "montecarlo": {"trials": 7}
  })");
  const std::string once = config_to_json(c);
  const ExperimentConfig back = parse_config(once);
  EXPECT_EQ(config_to_json(back), once);
  EXPECT_EQ(back.seed, 18446744073709551615ull);
  EXPECT_EQ(back.cart.damping, 0.0);
  EXPECT_EQ(back.trials, 7);
  EXPECT_EQ(back.optimizer.metric, MetricScaling::kInformation);
}

TEST(Config, MissingFileIsAnInputError) {
  try {
    load_config("/nonexistent/fimax.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_FALSE(IsNumericalError(e.code()));
  }
}

}  // namespace
}  // namespace fimax
