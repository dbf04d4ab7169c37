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

#include "fimax/error.hpp"
#include "fimax/numkit.hpp"

namespace fimax {

Eigen::MatrixXd fd_jacobian(const VectorFunction& fn, const Eigen::VectorXd& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be positive");
  Eigen::MatrixXd jac;
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    const Eigen::VectorXd fp = fn(xp);
    xp[j] = x[j] - h;
    const Eigen::VectorXd fm = fn(xp);
    xp[j] = x[j];
    if (!fp.allFinite() || !fm.allFinite()) {
      throw Error(ErrorCode::kNonFiniteResult, "function not finite near the evaluation point");
    }
    if (j == 0) jac.resize(fp.size(), x.size());
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

}  // namespace fimax
