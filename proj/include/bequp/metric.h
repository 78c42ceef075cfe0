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

#ifndef BEQUP_METRIC_H_
#define BEQUP_METRIC_H_

#include <string_view>
#include <vector>

namespace bequp {

enum class Metric { kFidelity, kSkf };

std::string_view metric_name(Metric metric);
Metric parse_metric(std::string_view name);

/// Hooks that let one learner loop serve both path metrics.
struct MetricAdapter {
    Metric metric = Metric::kFidelity;

    /// BestPath edge weight for a link parameter p: ln p, or ln((2p+1)/3).
    double link_weight(double p) const;
    /// Maps an estimated ln p to the metric's per-link log weight.
    double from_log_p(double log_p) const;
    /// Multiplier on the path learner's pruning threshold.
    double prune_factor() const;

    std::vector<double> link_weights(const std::vector<double> &p) const;
};

MetricAdapter adapter_for(Metric metric);

}  // namespace bequp

#endif  // BEQUP_METRIC_H_
