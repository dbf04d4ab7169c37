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

#ifndef FIMAX_WORKFLOWS_HPP_
#define FIMAX_WORKFLOWS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "fimax/config.hpp"
#include "fimax/error.hpp"
#include "fimax/estimation.hpp"
#include "fimax/information.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {

// A configured experiment: the model, the design problem at theta0 and the
// initial trajectory (perturbed when the config asks for it).
struct Experiment {
  ExperimentConfig config;
  std::unique_ptr<PlantModel> model;
  TrajectoryProblem problem;
  ExtendedTrajectory initial;

  explicit Experiment(const ExperimentConfig& cfg);
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;

  // Estimation setup for a trajectory's control.
  EstimationProblem estimation(const ExtendedTrajectory& eta) const;
  // Discrete FIM on the configured sampling grid.
  InfoMatrix discrete_information(const ExtendedTrajectory& eta) const;
};

struct WorkflowOutput {
  std::string summary;             // human-readable, ends with a newline
  std::vector<std::string> files;  // written, relative to the output directory
};

const std::vector<std::string>& workflow_names();

// Runs one subcommand and writes its artifacts (plus effective_config.json)
// under config.output_dir. Throws fimax::Error.
WorkflowOutput run_workflow(const std::string& name, const ExperimentConfig& config);

// 0 on success, 2 for configuration or input errors, 3 for numerical failures.
int exit_code_for(ErrorCode code);

}  // namespace fimax

#endif  // FIMAX_WORKFLOWS_HPP_
