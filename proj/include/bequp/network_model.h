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

#ifndef BEQUP_NETWORK_MODEL_H_
#define BEQUP_NETWORK_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bequp {

struct LinkId {
    std::size_t value = 0;
    constexpr LinkId() = default;
    constexpr explicit LinkId(std::size_t v) : value(v) {}
    auto operator<=>(const LinkId &) const = default;
};

struct PathId {
    std::size_t value = 0;
    constexpr PathId() = default;
    constexpr explicit PathId(std::size_t v) : value(v) {}
    auto operator<=>(const PathId &) const = default;
};

/// Thrown when an instance has no unique best path (ties within
/// kBestPathTolerance, or fewer than two paths).
class DegenerateInstanceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Absolute tolerance on transformed-fidelity values for "unique best path".
inline constexpr double kBestPathTolerance = 1e-12;

/// Directed link graph behind a topology. Present for topologies built from
/// segments; explicit incidence matrices carry no graph.
struct LinkGraph {
    std::size_t num_nodes = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    /// (from, to) node pair per link.
    std::vector<std::pair<std::size_t, std::size_t>> endpoints;
};

/// Two-terminal network: L links, K enumerated paths given as binary
/// incidence rows x(k). Immutable after construction.
class Topology {
   public:
    /// Validates the rows: equal length L >= 1, every row non-empty, all rows
    /// distinct. Throws std::invalid_argument otherwise.
    static Topology from_incidence(const std::vector<std::vector<std::uint8_t>> &rows);

    /// Series of parallel link groups. Paths are every one-link-per-segment
    /// combination, enumerated in lexicographic order with the last segment
    /// varying fastest. Links are numbered segment by segment.
    static Topology segmented(std::span<const std::size_t> parallel_counts);

    std::size_t num_links() const { return num_links_; }
    std::size_t num_paths() const { return path_links_.size(); }

    /// Sorted link set L(k).
    std::span<const LinkId> links_of(PathId k) const;
    std::size_t path_length(PathId k) const { return links_of(k).size(); }
    std::size_t max_path_length() const;
    bool contains(PathId k, LinkId l) const;

    /// K x L 0/1 matrix.
    const Eigen::MatrixXd &incidence() const { return incidence_; }
    Eigen::VectorXd row(PathId k) const { return incidence_.row(k.value).transpose(); }
    std::vector<std::uint8_t> row_bits(PathId k) const;

    /// Numerical rank of the incidence matrix. Not required to equal L.
    std::size_t rank() const { return rank_; }

    /// x(k)^T w.
    double score(PathId k, std::span<const double> weights) const;

    const std::optional<std::vector<std::size_t>> &segments() const { return segments_; }
    const std::optional<LinkGraph> &graph() const { return graph_; }

    /// Path whose link set equals `links` (any order), if one exists.
    std::optional<PathId> find_path(std::vector<LinkId> links) const;

    std::vector<PathId> all_paths() const;

   private:
    Topology() = default;
    void finalize();

    std::size_t num_links_ = 0;
    std::vector<std::vector<LinkId>> path_links_;
    Eigen::MatrixXd incidence_;
    std::size_t rank_ = 0;
    std::optional<std::vector<std::size_t>> segments_;
    std::optional<LinkGraph> graph_;
};

/// A topology plus ground-truth per-link depolarizing parameters.
/// Accepts p in (0, 1]; p = 1 is a noiseless link.
class Instance {
   public:
    Instance(Topology topology, std::vector<double> link_p);

    const Topology &topology() const { return topology_; }
    std::span<const double> link_p() const { return link_p_; }
    double link_p(LinkId l) const { return link_p_[l.value]; }
    std::size_t num_links() const { return topology_.num_links(); }
    std::size_t num_paths() const { return topology_.num_paths(); }

   private:
    Topology topology_;
    std::vector<double> link_p_;
};

/// Product of link depolarizing parameters along k.
double path_depolarizing(const Instance &instance, PathId k);

/// F(k) = sum over links of ln p. Throws std::invalid_argument if any p <= 0.
double transformed_fidelity(const Instance &instance, PathId k);

/// f = (1 + p) / 2 for p in (0, 1].
double fidelity_from_p(double p);
/// p = 2f - 1 for f in (1/2, 1].
double p_from_fidelity(double f);

struct GapReport {
    std::vector<double> link_gaps;
    std::vector<double> path_gaps;
    PathId best_path;
};

/// Link and path gaps under per-link weights w (for fidelity, w = ln p).
/// Path scores are x(k)^T w. Throws DegenerateInstanceError when the best
/// path is not unique or K < 2.
GapReport compute_gaps(const Topology &topology, std::span<const double> weights);
GapReport compute_gaps(const Instance &instance);

/// argmax over `subset` of x(k)^T weights; ties go to the smallest PathId.
/// Throws std::invalid_argument on an empty subset.
PathId best_path(const Topology &topology, std::span<const double> weights, std::span<const PathId> subset);
PathId best_path(const Topology &topology, std::span<const double> weights);

/// Same argmax over all paths, computed as a shortest path on the link graph
/// with edge lengths -weight. Requires a graph and non-positive weights.
PathId dijkstra_best_path(const Topology &topology, std::span<const double> weights);

/// True best path under ln p, with uniqueness checked.
PathId true_best_path(const Instance &instance);

}  // namespace bequp

#endif  // BEQUP_NETWORK_MODEL_H_
