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

#include "bequp/link_learner.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bequp {

double radius(std::uint64_t t, std::uint64_t n, const RadiusConfig &cfg, std::size_t num_links) {
    if (t < 1 || n < 1) {
        throw std::invalid_argument("radius needs t >= 1 and N >= 1");
    }
    const double td = static_cast<double>(t);
    const double arg = 2.0 * static_cast<double>(num_links) * td * td * td / cfg.delta;
    return std::sqrt(cfg.c * std::log(arg) / static_cast<double>(n));
}

std::vector<double> confidence_estimates(const Topology &topology, const LinkEstimates &est, PathId k_hat,
                                         const RadiusConfig &cfg, double clip_lo) {
    const std::size_t L = topology.num_links();
    std::vector<double> out(L);
    for (std::size_t l = 0; l < L; ++l) {
        const double rad = radius(est.t, est.counts[l], cfg, L);
        const double v = topology.contains(k_hat, LinkId(l)) ? est.p_hat[l] - rad : est.p_hat[l] + rad;
        out[l] = std::clamp(v, clip_lo, 1.0 - 1e-12);
    }
    return out;
}

LinkId select_link(const Topology &topology, PathId k_hat, PathId k_tilde, const LinkEstimates &est,
                   const RadiusConfig &cfg) {
    std::optional<LinkId> best;
    double best_rad = -1.0;
    for (std::size_t l = 0; l < topology.num_links(); ++l) {
        if (topology.contains(k_hat, LinkId(l)) == topology.contains(k_tilde, LinkId(l))) {
            continue;
        }
        const double rad = radius(est.t, est.counts[l], cfg, topology.num_links());
        if (rad > best_rad) {
            best_rad = rad;
            best = LinkId(l);
        }
    }
    if (!best) {
        throw std::invalid_argument("select_link: paths have equal link sets");
    }
    return *best;
}

RunResult run_bequp_link(Feedback &feedback, const LinkLearnerConfig &cfg, Rng &rng) {
    const Topology &topo = feedback.topology();
    const std::size_t L = topo.num_links();
    if (topo.num_paths() < 2) {
        throw std::invalid_argument("link learner needs at least two paths");
    }
    const std::uint64_t cost_before = feedback.total_cost();
    RunResult result;
    LinkEstimates est;
    est.p_hat.resize(L);
    est.counts.assign(L, 1);
    for (std::size_t l = 0; l < L; ++l) {
        est.p_hat[l] = feedback.query_link(LinkId(l), rng);
    }
    est.t = L;

    while (true) {
        const PathId k_hat = best_path(topo, cfg.metric.link_weights(est.p_hat));
        const auto p_tilde = confidence_estimates(topo, est, k_hat, cfg.radius, cfg.clip_lo);
        const PathId k_tilde = best_path(topo, cfg.metric.link_weights(p_tilde));
        result.output_path = k_hat;
        if (k_hat == k_tilde) {
            if (cfg.record_rounds) {
                result.link_rounds.push_back({est.t, k_hat, k_tilde, std::nullopt, std::nullopt, std::nullopt});
            }
            break;
        }
        if (est.t >= cfg.round_cap) {
            result.budget_exhausted = true;
            break;
        }
        const LinkId l = select_link(topo, k_hat, k_tilde, est, cfg.radius);
        const double x = feedback.query_link(l, rng);
        const std::uint64_t n = est.counts[l.value];
        est.p_hat[l.value] = (x + static_cast<double>(n) * est.p_hat[l.value]) / static_cast<double>(n + 1);
        est.counts[l.value] = n + 1;
        if (cfg.record_rounds) {
            result.link_rounds.push_back({est.t, k_hat, k_tilde, l, x, n + 1});
        }
        ++est.t;
    }
    result.rounds = est.t;
    result.total_cost = feedback.total_cost() - cost_before;
    result.calls = feedback.take_calls();
    return result;
}

}  // namespace bequp
