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

#include "bequp/path_learner.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bequp {

LinkLogEstimate link_est(Feedback &feedback, const DesignWeights &design, std::uint64_t n, Rng &rng) {
    if (n < 1) {
        throw std::invalid_argument("link_est needs N >= 1");
    }
    const Topology &topo = feedback.topology();
    const auto L = static_cast<Eigen::Index>(topo.num_links());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(L, L);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(L);
    std::discrete_distribution<std::size_t> draw(design.lambda.begin(), design.lambda.end());
    LinkLogEstimate out;
    const std::uint64_t cost_before = feedback.total_cost();

    auto sample_once = [&]() {
        const PathId k = design.support[draw(rng)];
        const double y = feedback.query_path(k, rng);
        const Eigen::VectorXd x = topo.row(k);
        a.noalias() += x * x.transpose();
        b += std::log(y) * x;
        ++out.samples_used;
    };
    for (std::uint64_t i = 0; i < n; ++i) {
        sample_once();
    }
    auto sampled_rank = [&]() {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        lu.setThreshold(1e-9);
        return static_cast<std::size_t>(lu.rank());
    };
    while (sampled_rank() < design.rank) {
        sample_once();
    }
    out.log_p_hat = psd_pseudo_inverse(a) * b;
    out.cost_units = feedback.total_cost() - cost_before;
    return out;
}

LinkLogEstimate link_est(Feedback &feedback, std::span<const PathId> paths, std::uint64_t n, Rng &rng) {
    return link_est(feedback, optimal_design(feedback.topology(), paths), n, rng);
}

PruneResult prune(const Topology &topology, std::span<const PathId> paths, std::span<const double> weights,
                  double eps) {
    PruneResult r;
    r.k_best = best_path(topology, weights, paths);
    const double top = topology.score(r.k_best, weights);
    for (PathId k : paths) {
        if (top - topology.score(k, weights) < eps || k == r.k_best) {
            r.kept.push_back(k);
        } else {
            r.pruned.push_back(k);
        }
    }
    return r;
}

ScheduleParams schedule_params(std::size_t h, std::size_t s, double delta, std::size_t num_links,
                               std::size_t first_set_size, double c0) {
    if (s < 1) {
        throw std::invalid_argument("schedule_params needs s >= 1");
    }
    ScheduleParams p;
    const double pi4 = std::pow(std::numbers::pi, 4);
    const double hh = static_cast<double>(h + 1);
    const double ss = static_cast<double>(s);
    p.delta_hs = 36.0 / pi4 * delta / (hh * hh * ss * ss);
    p.eps_hs = std::ldexp(1.0, -static_cast<int>(s));
    const double e4 = p.eps_hs / 4.0;
    const double L = static_cast<double>(num_links);
    const double raw =
        c0 * (2.0 + (6.0 + e4) * L) / (e4 * e4) * std::log(5.0 * static_cast<double>(first_set_size) / p.delta_hs);
    p.n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(raw)));
    return p;
}

std::uint64_t link_est_sample_size(double eps, double delta, std::size_t num_links, double c0) {
    const double L = static_cast<double>(num_links);
    const double raw = c0 * (4.0 * L + (6.0 + eps) * L * L) / (eps * eps) * std::log(5.0 * L / delta);
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(raw)));
}

RunResult run_bequp_path(Feedback &feedback, const PathLearnerConfig &cfg, Rng &rng) {
    const Topology &topo = feedback.topology();
    const std::size_t L = topo.num_links();
    if (topo.num_paths() < 2) {
        throw std::invalid_argument("path learner needs at least two paths");
    }
    const std::uint64_t cost_before = feedback.total_cost();
    const std::size_t calls_before = feedback.calls().size();
    RunResult result;
    std::vector<PathId> current = topo.all_paths();
    const auto outer = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(L))));
    std::vector<double> weights(L, 0.0);

    for (std::size_t h = 0; h <= outer && current.size() > 1 && !result.budget_exhausted; ++h) {
        const std::vector<PathId> frozen = current;
        const DesignWeights design = optimal_design(topo, frozen, cfg.design_slack);
        const std::size_t threshold = std::max<std::size_t>(1, L >> std::min<std::size_t>(h, 63));
        for (std::size_t s = 1; current.size() > threshold; ++s) {
            const ScheduleParams sp = schedule_params(h, s, cfg.delta, L, frozen.size(), cfg.c0);
            const LinkLogEstimate est = link_est(feedback, design, sp.n, rng);
            for (std::size_t l = 0; l < L; ++l) {
                weights[l] = cfg.metric.from_log_p(est.log_p_hat[static_cast<Eigen::Index>(l)]);
            }
            PruneResult pr = prune(topo, current, weights, cfg.metric.prune_factor() * sp.eps_hs);
            if (cfg.record_rounds) {
                result.path_rounds.push_back(
                    {h, s, current.size(), sp.delta_hs, sp.eps_hs, est.samples_used, pr.k_best, pr.pruned});
            }
            current = std::move(pr.kept);
            if (feedback.calls().size() - calls_before >= cfg.call_cap && current.size() > threshold) {
                result.budget_exhausted = true;
                break;
            }
        }
    }
    result.output_path = current.size() == 1 ? current.front() : best_path(topo, weights, current);
    result.total_cost = feedback.total_cost() - cost_before;
    result.calls = feedback.take_calls();
    result.rounds = result.calls.size();
    return result;
}

}  // namespace bequp
