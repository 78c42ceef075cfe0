// Copyright 2026 The BeQuP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEQUP_OPTIMAL_DESIGN_H_
#define BEQUP_OPTIMAL_DESIGN_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bequp/network_model.h"

namespace bequp {

/// Moore-Penrose inverse of a symmetric PSD matrix; eigenvalues at or below
/// rel_tol times the largest are treated as zero.
Eigen::MatrixXd psd_pseudo_inverse(const Eigen::MatrixXd &a, double rel_tol = 1e-10);

/// Numerical rank of the incidence rows of `paths`.
std::size_t span_rank(const Topology &topology, std::span<const PathId> paths);

struct DesignWeights {
    std::vector<PathId> support;
    std::vector<double> lambda;
    /// max over the support of x^T A(lambda)^+ x at termination.
    double g_value = 0.0;
    std::size_t rank = 0;
    std::size_t iterations = 0;
};

/// A(lambda) = sum lambda_k x(k) x(k)^T.
Eigen::MatrixXd information_matrix(const Topology &topology, const DesignWeights &design);

/// D-optimal design over `paths` by Fedorov-Wynn (Frank-Wolfe) steps from
/// uniform weights, stopped once the G-criterion is at most (1 + slack) rank.
DesignWeights optimal_design(const Topology &topology, std::span<const PathId> paths, double slack = 0.05,
                             std::size_t max_iterations = 10000);

}  // namespace bequp

#endif  // BEQUP_OPTIMAL_DESIGN_H_
