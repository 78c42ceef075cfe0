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

#ifndef BEQUP_RUN_RESULT_H_
#define BEQUP_RUN_RESULT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bequp/network_model.h"

namespace bequp {

/// One Bench call as seen by a learner.
struct BenchCall {
    bool is_path = false;
    std::size_t target = 0;
    double value = 0.0;
    std::uint64_t cost_units = 0;
};

struct LinkRound {
    std::uint64_t t = 0;
    PathId k_hat;
    PathId k_tilde;
    /// Empty on the stopping round.
    std::optional<LinkId> chosen_link;
    std::optional<double> feedback;
    std::optional<std::uint64_t> n_after;
};

struct PathRound {
    std::size_t h = 0;
    std::size_t s = 0;
    std::size_t set_size = 0;
    double delta_hs = 0.0;
    double eps_hs = 0.0;
    std::uint64_t n = 0;
    PathId k_best;
    std::vector<PathId> pruned;
};

struct RunResult {
    PathId output_path;
    /// Q: total resource units consumed.
    std::uint64_t total_cost = 0;
    /// Number of Bench calls; T for link-level runs.
    std::uint64_t rounds = 0;
    bool budget_exhausted = false;
    /// Elimination phases for the halving baseline.
    std::uint64_t phases = 0;
    std::vector<BenchCall> calls;
    std::vector<LinkRound> link_rounds;
    std::vector<PathRound> path_rounds;
};

/// Sum of cost_units over the recorded calls.
std::uint64_t audited_cost(const RunResult &result);

/// JSON-lines trace: one record per link round or path inner iteration.
std::string trace_jsonl(const RunResult &result);

}  // namespace bequp

#endif  // BEQUP_RUN_RESULT_H_
