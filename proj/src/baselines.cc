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

#include "bequp/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bequp {

namespace {

void require_path_metric(const BaselineConfig &cfg, const char *name) {
    if (cfg.metric.metric != Metric::kFidelity) {
        throw UnsupportedMetricError(std::string(name) + " ranks whole paths and supports only the fidelity metric");
    }
}

void finish(RunResult &r, Feedback &feedback, std::uint64_t cost_before) {
    r.total_cost = feedback.total_cost() - cost_before;
    r.calls = feedback.take_calls();
    r.rounds = r.calls.size();
}

// Largest mean among `arms`, ties to the smallest id.
std::size_t best_arm(const std::vector<double> &means, const std::vector<std::size_t> &arms) {
    std::size_t best = arms.front();
    for (std::size_t a : arms) {
        if (means[a] > means[best] || (means[a] == means[best] && a < best)) {
            best = a;
        }
    }
    return best;
}

}  // namespace

RunResult uniform_link(Feedback &feedback, const BaselineConfig &cfg, Rng &rng) {
    const Topology &topo = feedback.topology();
    const std::uint64_t cost_before = feedback.total_cost();
    std::vector<double> mean(topo.num_links(), 0.0);
    for (std::size_t l = 0; l < topo.num_links(); ++l) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < cfg.samples_per_arm; ++i) {
            sum += feedback.query_link(LinkId(l), rng);
        }
        mean[l] = sum / static_cast<double>(cfg.samples_per_arm);
    }
    RunResult r;
    r.output_path = best_path(topo, cfg.metric.link_weights(mean));
    finish(r, feedback, cost_before);
    return r;
}

RunResult uniform_path(Feedback &feedback, const BaselineConfig &cfg, Rng &rng) {
    require_path_metric(cfg, "uniform-path");
    const Topology &topo = feedback.topology();
    const std::uint64_t cost_before = feedback.total_cost();
    std::vector<double> mean(topo.num_paths(), 0.0);
    std::vector<std::size_t> arms(topo.num_paths());
    std::iota(arms.begin(), arms.end(), 0);
    for (std::size_t k : arms) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < cfg.samples_per_arm; ++i) {
            sum += feedback.query_path(PathId(k), rng);
        }
        mean[k] = sum / static_cast<double>(cfg.samples_per_arm);
    }
    RunResult r;
    r.output_path = PathId(best_arm(mean, arms));
    finish(r, feedback, cost_before);
    return r;
}

RunResult succ_elim(Feedback &feedback, const BaselineConfig &cfg, Rng &rng) {
    require_path_metric(cfg, "succ-elim");
    const Topology &topo = feedback.topology();
    const std::size_t K = topo.num_paths();
    if (K < 2) {
        throw std::invalid_argument("succ-elim needs at least two paths");
    }
    const std::uint64_t cost_before = feedback.total_cost();
    std::vector<double> sum(K, 0.0);
    std::vector<std::size_t> alive(K);
    std::iota(alive.begin(), alive.end(), 0);
    RunResult r;
    for (std::uint64_t round = 1; alive.size() > 1; ++round) {
        if (feedback.calls().size() >= cfg.call_cap) {
            r.budget_exhausted = true;
            break;
        }
        for (std::size_t k : alive) {
            sum[k] += feedback.query_path(PathId(k), rng);
        }
        const double rd = static_cast<double>(round);
        const double rad = std::sqrt(cfg.c * std::log(4.0 * static_cast<double>(K) * rd * rd / cfg.delta) / rd);
        std::vector<double> mean(K, 0.0);
        for (std::size_t k : alive) {
            mean[k] = sum[k] / rd;
        }
        const std::size_t lead = best_arm(mean, alive);
        std::vector<std::size_t> next;
        for (std::size_t k : alive) {
            if (k == lead || mean[lead] - mean[k] <= 2.0 * rad) {
                next.push_back(k);
            }
        }
        alive = std::move(next);
        ++r.phases;
    }
    std::vector<double> mean(K, 0.0);
    for (std::size_t k : alive) {
        mean[k] = sum[k];
    }
    r.output_path = PathId(best_arm(mean, alive));
    finish(r, feedback, cost_before);
    return r;
}

RunResult linkselfie_style(Feedback &feedback, const BaselineConfig &cfg, Rng &rng) {
    require_path_metric(cfg, "linkselfie");
    const Topology &topo = feedback.topology();
    const std::size_t K = topo.num_paths();
    if (K < 2) {
        throw std::invalid_argument("linkselfie needs at least two paths");
    }
    const std::uint64_t cost_before = feedback.total_cost();
    const double phases = std::ceil(std::log2(static_cast<double>(K)));
    const double n1 = std::ceil(cfg.c * std::log(2.0 * static_cast<double>(K) * phases / cfg.delta) /
                                (cfg.halving_resolution * cfg.halving_resolution));
    std::vector<double> sum(K, 0.0);
    std::vector<std::uint64_t> count(K, 0);
    std::vector<std::size_t> alive(K);
    std::iota(alive.begin(), alive.end(), 0);
    RunResult r;
    std::uint64_t per_arm = static_cast<std::uint64_t>(std::max(1.0, n1));
    while (alive.size() > 1) {
        for (std::size_t k : alive) {
            for (std::uint64_t i = 0; i < per_arm && !r.budget_exhausted; ++i) {
                sum[k] += feedback.query_path(PathId(k), rng);
                ++count[k];
                r.budget_exhausted = feedback.calls().size() >= cfg.call_cap;
            }
        }
        if (r.budget_exhausted) {
            break;
        }
        std::vector<double> mean(K, 0.0);
        for (std::size_t k : alive) {
            mean[k] = sum[k] / static_cast<double>(count[k]);
        }
        std::stable_sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
        alive.resize((alive.size() + 1) / 2);
        std::sort(alive.begin(), alive.end());
        per_arm *= 2;
        ++r.phases;
    }
    std::vector<double> mean(K, 0.0);
    for (std::size_t k : alive) {
        mean[k] = count[k] ? sum[k] / static_cast<double>(count[k]) : 0.0;
    }
    r.output_path = PathId(best_arm(mean, alive));
    finish(r, feedback, cost_before);
    return r;
}

}  // namespace bequp
