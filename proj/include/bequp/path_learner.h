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

#ifndef BEQUP_PATH_LEARNER_H_
#define BEQUP_PATH_LEARNER_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bequp/feedback.h"
#include "bequp/metric.h"
#include "bequp/optimal_design.h"
#include "bequp/random.h"
#include "bequp/run_result.h"

namespace bequp {

struct LinkLogEstimate {
    /// Minimum-norm least-squares solution; zero off the sampled span.
    Eigen::VectorXd log_p_hat;
    std::uint64_t samples_used = 0;
    std::uint64_t cost_units = 0;
};

/// Draws N paths i.i.d. from the design, queries each, and regresses ln Y on
/// the incidence rows: log_p_hat = A^+ b with A = sum x x^T and
/// b = sum ln(Y) x over the draws. Keeps drawing past N until the drawn rows
/// span the design's support.
LinkLogEstimate link_est(Feedback &feedback, const DesignWeights &design, std::uint64_t n, Rng &rng);
LinkLogEstimate link_est(Feedback &feedback, std::span<const PathId> paths, std::uint64_t n, Rng &rng);

struct PruneResult {
    PathId k_best;
    std::vector<PathId> kept;
    std::vector<PathId> pruned;
};

/// Keeps k with (x(k_best) - x(k))^T weights < eps.
PruneResult prune(const Topology &topology, std::span<const PathId> paths, std::span<const double> weights,
                  double eps);

struct ScheduleParams {
    double delta_hs = 0.0;
    double eps_hs = 0.0;
    std::uint64_t n = 0;
};

/// delta_hs = (36/pi^4) delta / ((h+1)^2 s^2), eps_hs = 2^-s,
/// N = ceil(C0 (2 + (6 + eps/4) L) / (eps/4)^2 ln(5 |S_h^(1)| / delta_hs)).
ScheduleParams schedule_params(std::size_t h, std::size_t s, double delta, std::size_t num_links,
                               std::size_t first_set_size, double c0);

/// ceil(C0 (4L + (6 + eps) L^2) / eps^2 ln(5L / delta)): the sample size at
/// which LinkEst is eps-accurate on every path with probability 1 - delta.
std::uint64_t link_est_sample_size(double eps, double delta, std::size_t num_links, double c0);

struct PathLearnerConfig {
    double delta = 0.05;
    double c0 = 1.0;
    MetricAdapter metric;
    double design_slack = 0.05;
    /// Cap on Bench calls; the run stops with budget_exhausted when crossed.
    std::uint64_t call_cap = 100'000'000;
    bool record_rounds = true;
};

/// Halving outer loop over h with successive eps-pruning; LinkEst samples from
/// the set frozen at the start of each outer iteration.
RunResult run_bequp_path(Feedback &feedback, const PathLearnerConfig &cfg, Rng &rng);

}  // namespace bequp

#endif  // BEQUP_PATH_LEARNER_H_
