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

#ifndef BEQUP_LINK_LEARNER_H_
#define BEQUP_LINK_LEARNER_H_

#include <cstdint>
#include <vector>

#include "bequp/feedback.h"
#include "bequp/metric.h"
#include "bequp/network_model.h"
#include "bequp/random.h"
#include "bequp/run_result.h"

namespace bequp {

struct RadiusConfig {
    double c = 1.0;
    double delta = 0.05;
};

/// sqrt(C ln(2 L t^3 / delta) / N).
double radius(std::uint64_t t, std::uint64_t n, const RadiusConfig &cfg, std::size_t num_links);

struct LinkEstimates {
    std::vector<double> p_hat;
    std::vector<std::uint64_t> counts;
    std::uint64_t t = 0;
};

/// p_hat - rad on links of k_hat, p_hat + rad elsewhere, clamped to
/// [clip_lo, 1 - 1e-12].
std::vector<double> confidence_estimates(const Topology &topology, const LinkEstimates &est, PathId k_hat,
                                         const RadiusConfig &cfg, double clip_lo);

/// Link of largest radius in the symmetric difference of the two paths' link
/// sets, ties to the smallest id. Throws std::invalid_argument when the sets
/// are equal.
LinkId select_link(const Topology &topology, PathId k_hat, PathId k_tilde, const LinkEstimates &est,
                   const RadiusConfig &cfg);

struct LinkLearnerConfig {
    RadiusConfig radius;
    MetricAdapter metric;
    double clip_lo = 0.01;
    std::uint64_t round_cap = 1'000'000;
    bool record_rounds = true;
};

/// Adaptive link benchmarking until the pessimistic/optimistic best path
/// agrees with the empirical one.
RunResult run_bequp_link(Feedback &feedback, const LinkLearnerConfig &cfg, Rng &rng);

}  // namespace bequp

#endif  // BEQUP_LINK_LEARNER_H_
