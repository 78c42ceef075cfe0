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

#include "bequp/network_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace bequp {

Topology Topology::from_incidence(const std::vector<std::vector<std::uint8_t>> &rows) {
    if (rows.empty()) {
        throw std::invalid_argument("incidence matrix has no rows");
    }
    std::size_t num_links = rows.front().size();
    if (num_links == 0) {
        throw std::invalid_argument("incidence matrix has no columns");
    }
    Topology t;
    t.num_links_ = num_links;
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto &r : rows) {
        if (r.size() != num_links) {
            throw std::invalid_argument("incidence rows have unequal length");
        }
        std::vector<LinkId> links;
        for (std::size_t l = 0; l < num_links; ++l) {
            if (r[l] > 1) {
                throw std::invalid_argument("incidence entries must be 0 or 1");
            }
            if (r[l]) {
                links.emplace_back(l);
            }
        }
        if (links.empty()) {
            throw std::invalid_argument("path with no links");
        }
        if (!seen.insert(r).second) {
            throw std::invalid_argument("duplicate path in incidence matrix");
        }
        t.path_links_.push_back(std::move(links));
    }
    t.finalize();
    return t;
}

Topology Topology::segmented(std::span<const std::size_t> parallel_counts) {
    if (parallel_counts.empty()) {
        throw std::invalid_argument("segmented topology needs at least one segment");
    }
    Topology t;
    std::vector<std::size_t> offsets;
    LinkGraph graph;
    graph.num_nodes = parallel_counts.size() + 1;
    graph.source = 0;
    graph.target = parallel_counts.size();
    for (std::size_t s = 0; s < parallel_counts.size(); ++s) {
        if (parallel_counts[s] == 0) {
            throw std::invalid_argument("segment with no links");
        }
        offsets.push_back(t.num_links_);
        t.num_links_ += parallel_counts[s];
        for (std::size_t j = 0; j < parallel_counts[s]; ++j) {
            graph.endpoints.emplace_back(s, s + 1);
        }
    }
    std::vector<std::size_t> choice(parallel_counts.size(), 0);
    while (true) {
        std::vector<LinkId> links;
        for (std::size_t s = 0; s < choice.size(); ++s) {
            links.emplace_back(offsets[s] + choice[s]);
        }
        t.path_links_.push_back(std::move(links));
        std::size_t s = choice.size();
        while (s > 0) {
            --s;
            if (++choice[s] < parallel_counts[s]) {
                break;
            }
            choice[s] = 0;
            if (s == 0) {
                s = choice.size() + 1;
                break;
            }
        }
        if (s == choice.size() + 1) {
            break;
        }
    }
    t.segments_ = std::vector<std::size_t>(parallel_counts.begin(), parallel_counts.end());
    t.graph_ = std::move(graph);
    t.finalize();
    return t;
}

void Topology::finalize() {
    incidence_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(path_links_.size()),
                                       static_cast<Eigen::Index>(num_links_));
    for (std::size_t k = 0; k < path_links_.size(); ++k) {
        for (LinkId l : path_links_[k]) {
            incidence_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l.value)) = 1.0;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(incidence_);
    lu.setThreshold(1e-9);
    rank_ = static_cast<std::size_t>(lu.rank());
}

std::span<const LinkId> Topology::links_of(PathId k) const {
    if (k.value >= path_links_.size()) {
        throw std::out_of_range("path id out of range");
    }
    return path_links_[k.value];
}

std::size_t Topology::max_path_length() const {
    std::size_t m = 0;
    for (const auto &p : path_links_) {
        m = std::max(m, p.size());
    }
    return m;
}

bool Topology::contains(PathId k, LinkId l) const {
    auto links = links_of(k);
    return std::binary_search(links.begin(), links.end(), l);
}

std::vector<std::uint8_t> Topology::row_bits(PathId k) const {
    std::vector<std::uint8_t> bits(num_links_, 0);
    for (LinkId l : links_of(k)) {
        bits[l.value] = 1;
    }
    return bits;
}

double Topology::score(PathId k, std::span<const double> weights) const {
    if (weights.size() != num_links_) {
        throw std::invalid_argument("weight vector length does not match link count");
    }
    double s = 0.0;
    for (LinkId l : links_of(k)) {
        s += weights[l.value];
    }
    return s;
}

std::optional<PathId> Topology::find_path(std::vector<LinkId> links) const {
    std::sort(links.begin(), links.end());
    for (std::size_t k = 0; k < path_links_.size(); ++k) {
        if (path_links_[k] == links) {
            return PathId(k);
        }
    }
    return std::nullopt;
}

std::vector<PathId> Topology::all_paths() const {
    std::vector<PathId> out;
    out.reserve(path_links_.size());
    for (std::size_t k = 0; k < path_links_.size(); ++k) {
        out.emplace_back(k);
    }
    return out;
}

Instance::Instance(Topology topology, std::vector<double> link_p)
    : topology_(std::move(topology)), link_p_(std::move(link_p)) {
    if (link_p_.size() != topology_.num_links()) {
        throw std::invalid_argument("link_p length does not match link count");
    }
    for (double p : link_p_) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw std::invalid_argument("link depolarizing parameter must lie in (0, 1]");
        }
    }
}

double path_depolarizing(const Instance &instance, PathId k) {
    double p = 1.0;
    for (LinkId l : instance.topology().links_of(k)) {
        p *= instance.link_p(l);
    }
    return p;
}

double transformed_fidelity(const Instance &instance, PathId k) {
    double s = 0.0;
    for (LinkId l : instance.topology().links_of(k)) {
        double p = instance.link_p(l);
        if (!(p > 0.0)) {
            throw std::invalid_argument("non-positive depolarizing parameter");
        }
        s += std::log(p);
    }
    return s;
}

double fidelity_from_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing parameter must lie in (0, 1]");
    }
    return (1.0 + p) / 2.0;
}

double p_from_fidelity(double f) {
    if (!(f > 0.5 && f <= 1.0)) {
        throw std::invalid_argument("fidelity must lie in (1/2, 1]");
    }
    return 2.0 * f - 1.0;
}

namespace {

std::vector<double> log_weights(const Instance &instance) {
    std::vector<double> w;
    w.reserve(instance.num_links());
    for (double p : instance.link_p()) {
        w.push_back(std::log(p));
    }
    return w;
}

}  // namespace

GapReport compute_gaps(const Topology &topology, std::span<const double> weights) {
    const std::size_t K = topology.num_paths();
    const std::size_t L = topology.num_links();
    if (K < 2) {
        throw DegenerateInstanceError("fewer than two paths");
    }
    std::vector<double> scores(K);
    for (std::size_t k = 0; k < K; ++k) {
        scores[k] = topology.score(PathId(k), weights);
    }
    PathId best = best_path(topology, weights);
    const double top = scores[best.value];
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
        if (k != best.value) {
            runner_up = std::max(runner_up, scores[k]);
        }
    }
    if (top - runner_up <= kBestPathTolerance) {
        throw DegenerateInstanceError("best path is not unique");
    }

    GapReport report;
    report.best_path = best;
    report.path_gaps.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        report.path_gaps[k] = (k == best.value) ? top - runner_up : top - scores[k];
    }
    report.link_gaps.assign(L, std::numeric_limits<double>::infinity());
    for (std::size_t l = 0; l < L; ++l) {
        const bool in_best = topology.contains(best, LinkId(l));
        double alt = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k) {
            if (topology.contains(PathId(k), LinkId(l)) != in_best) {
                alt = std::max(alt, scores[k]);
            }
        }
        // Infinity when no competing path exists for this link.
        report.link_gaps[l] = top - alt;
    }
    return report;
}

GapReport compute_gaps(const Instance &instance) {
    auto w = log_weights(instance);
    return compute_gaps(instance.topology(), w);
}

PathId best_path(const Topology &topology, std::span<const double> weights, std::span<const PathId> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("best_path over an empty subset");
    }
    PathId best = subset.front();
    double best_score = topology.score(best, weights);
    for (PathId k : subset.subspan(1)) {
        double s = topology.score(k, weights);
        if (s > best_score || (s == best_score && k < best)) {
            best = k;
            best_score = s;
        }
    }
    return best;
}

PathId best_path(const Topology &topology, std::span<const double> weights) {
    auto all = topology.all_paths();
    return best_path(topology, weights, all);
}

PathId dijkstra_best_path(const Topology &topology, std::span<const double> weights) {
    if (!topology.graph()) {
        throw std::invalid_argument("topology has no link graph");
    }
    const LinkGraph &g = *topology.graph();
    if (weights.size() != topology.num_links()) {
        throw std::invalid_argument("weight vector length does not match link count");
    }
    for (double w : weights) {
        if (w > 0.0) {
            throw std::invalid_argument("dijkstra requires non-positive weights");
        }
    }
    std::vector<std::vector<std::size_t>> out_links(g.num_nodes);
    for (std::size_t l = 0; l < g.endpoints.size(); ++l) {
        out_links[g.endpoints[l].first].push_back(l);
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.num_nodes, inf);
    std::vector<std::size_t> via(g.num_nodes, g.endpoints.size());
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[g.source] = 0.0;
    queue.emplace(0.0, g.source);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) {
            continue;
        }
        for (std::size_t l : out_links[u]) {
            std::size_t v = g.endpoints[l].second;
            double nd = d - weights[l];
            // Strict improvement keeps the first (smallest id) link on ties.
            if (nd < dist[v]) {
                dist[v] = nd;
                via[v] = l;
                queue.emplace(nd, v);
            }
        }
    }
    if (dist[g.target] == inf) {
        throw std::invalid_argument("target unreachable");
    }
    std::vector<LinkId> links;
    for (std::size_t v = g.target; v != g.source;) {
        std::size_t l = via[v];
        links.emplace_back(l);
        v = g.endpoints[l].first;
    }
    auto k = topology.find_path(links);
    if (!k) {
        throw std::logic_error("shortest route is not an enumerated path");
    }
    return *k;
}

PathId true_best_path(const Instance &instance) {
    return compute_gaps(instance).best_path;
}

}  // namespace bequp
