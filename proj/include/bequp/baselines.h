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

#ifndef BEQUP_BASELINES_H_
#define BEQUP_BASELINES_H_

#include <cstdint>
#include <stdexcept>

#include "bequp/feedback.h"
#include "bequp/metric.h"
#include "bequp/random.h"
#include "bequp/run_result.h"

namespace bequp {

/// Thrown when a path-level baseline is asked for the SKF metric, which path
/// feedback alone cannot rank.
class UnsupportedMetricError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct BaselineConfig {
    std::uint64_t samples_per_arm = 20;
    double delta = 0.05;
    /// Concentration constant shared with the link learner's radius.
    double c = 1.0;
    /// Halving eliminator: first-phase samples per arm are
    /// ceil(C ln(2 K P / delta) / resolution^2), P = ceil(log2 K) phases.
    double halving_resolution = 0.05;
    MetricAdapter metric;
    std::uint64_t call_cap = 100'000'000;
};

/// Every link samples_per_arm times, then BestPath on the means.
RunResult uniform_link(Feedback &feedback, const BaselineConfig &cfg, Rng &rng);

/// Every path samples_per_arm times, then the largest mean.
RunResult uniform_path(Feedback &feedback, const BaselineConfig &cfg, Rng &rng);

/// Successive elimination over path arms with
/// rad_r = sqrt(C ln(4 K r^2 / delta) / r).
RunResult succ_elim(Feedback &feedback, const BaselineConfig &cfg, Rng &rng);

/// Topology-oblivious halving over path arms: each phase doubles the
/// per-arm samples and keeps the better half by empirical mean.
RunResult linkselfie_style(Feedback &feedback, const BaselineConfig &cfg, Rng &rng);

}  // namespace bequp

#endif  // BEQUP_BASELINES_H_
