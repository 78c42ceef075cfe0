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

#include "bequp/optimal_design.h"

#include <stdexcept>

namespace bequp {

Eigen::MatrixXd psd_pseudo_inverse(const Eigen::MatrixXd &a, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    const Eigen::VectorXd &vals = eig.eigenvalues();
    const double cutoff = rel_tol * std::max(vals.cwiseAbs().maxCoeff(), 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals[i] > cutoff && vals[i] > 0.0) {
            inv[i] = 1.0 / vals[i];
        }
    }
    return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

std::size_t span_rank(const Topology &topology, std::span<const PathId> paths) {
    if (paths.empty()) {
        return 0;
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(paths.size()), static_cast<Eigen::Index>(topology.num_links()));
    for (std::size_t i = 0; i < paths.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = topology.incidence().row(static_cast<Eigen::Index>(paths[i].value));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(x);
    lu.setThreshold(1e-9);
    return static_cast<std::size_t>(lu.rank());
}

Eigen::MatrixXd information_matrix(const Topology &topology, const DesignWeights &design) {
    const auto L = static_cast<Eigen::Index>(topology.num_links());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(L, L);
    for (std::size_t i = 0; i < design.support.size(); ++i) {
        Eigen::VectorXd x = topology.row(design.support[i]);
        a.noalias() += design.lambda[i] * x * x.transpose();
    }
    return a;
}

DesignWeights optimal_design(const Topology &topology, std::span<const PathId> paths, double slack,
                             std::size_t max_iterations) {
    if (paths.empty()) {
        throw std::invalid_argument("optimal_design over an empty path set");
    }
    DesignWeights d;
    d.support.assign(paths.begin(), paths.end());
    const std::size_t n = d.support.size();
    d.lambda.assign(n, 1.0 / static_cast<double>(n));
    d.rank = span_rank(topology, paths);
    const double r = static_cast<double>(d.rank);

    std::vector<Eigen::VectorXd> rows;
    rows.reserve(n);
    for (PathId k : d.support) {
        rows.push_back(topology.row(k));
    }
    for (d.iterations = 0;; ++d.iterations) {
        const Eigen::MatrixXd pinv = psd_pseudo_inverse(information_matrix(topology, d));
        std::size_t arg = 0;
        double g_max = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = rows[i].dot(pinv * rows[i]);
            if (g > g_max) {
                g_max = g;
                arg = i;
            }
        }
        d.g_value = g_max;
        if (g_max <= (1.0 + slack) * r || d.iterations >= max_iterations || g_max <= 1.0) {
            break;
        }
        const double gamma = (g_max / r - 1.0) / (g_max - 1.0);
        for (double &l : d.lambda) {
            l *= 1.0 - gamma;
        }
        d.lambda[arg] += gamma;
    }
    return d;
}

}  // namespace bequp
