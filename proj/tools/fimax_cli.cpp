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

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fimax/fimax.h"

namespace {

int Fail(fimax_status status) {
  std::fprintf(stderr, "fimax: %s: %s\n", fimax_status_name(status), fimax_last_error());
  return fimax_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory design and parameter estimation with Fisher information"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> trials;
  const char* workflows[][2] = {
      {"simulate", "integrate the initial trajectory and write trajectory.csv"},
      {"optimize", "optimize the trajectory; writes trace.csv and optimized_control.csv"},
      {"estimate", "batch least-squares estimate from measurements"},
      {"montecarlo", "Monte-Carlo covariance study on the configured trajectory"},
      {"crb", "Fisher information and Cramer-Rao bound of the configured trajectory"},
      {"report", "initial versus optimized comparison"},
  };
  for (const auto& w : workflows) {
    CLI::App* sub = app.add_subcommand(w[0], w[1]);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--seed", seed, "override the random seed");
    sub->add_option("--out", out_dir, "override the output directory");
    sub->add_option("--trials", trials, "override the Monte-Carlo trial count");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  fimax_config* cfg = nullptr;
  fimax_status st = fimax_config_load(config_path.c_str(), &cfg);
  if (st != FIMAX_OK) return Fail(st);
  if (seed) st = fimax_config_set_seed(cfg, *seed);
  if (st == FIMAX_OK && out_dir) st = fimax_config_set_output_dir(cfg, out_dir->c_str());
  if (st == FIMAX_OK && trials) st = fimax_config_set_trials(cfg, *trials);
  char* summary = nullptr;
  if (st == FIMAX_OK) st = fimax_run(cfg, name.c_str(), &summary);
  fimax_config_free(cfg);
  if (st != FIMAX_OK) return Fail(st);
  std::fputs(summary, stdout);
  fimax_string_free(summary);
  return 0;
}
