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

#ifndef BEQUP_EXPERIMENT_H_
#define BEQUP_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bequp/baselines.h"
#include "bequp/benchmarking.h"
#include "bequp/calibration.h"
#include "bequp/channel.h"
#include "bequp/feedback.h"
#include "bequp/metric.h"
#include "bequp/network_model.h"
#include "bequp/run_result.h"

namespace bequp {

enum class Algo { kBequpLink, kBequpPath, kUniformLink, kUniformPath, kSuccElim, kLinkSelfie };

inline constexpr std::array<Algo, 6> kAllAlgos = {Algo::kBequpLink,   Algo::kBequpPath, Algo::kUniformLink,
                                                  Algo::kUniformPath, Algo::kSuccElim,  Algo::kLinkSelfie};

/// "bequp-link", "bequp-path", "uniform-link", "uniform-path", "succ-elim",
/// "linkselfie".
std::string_view algo_name(Algo algo);
Algo parse_algo(std::string_view name);

/// Whether the algorithm can rank paths under the metric. Path-arm baselines
/// see only path products and cannot rank by SKF.
bool supports_metric(Algo algo, Metric metric);

/// True when the algorithm benchmarks links rather than paths.
bool is_link_level(Algo algo);

/// C-D fidelities for the [2, 2, n] instance: 0.99, then 0.95 falling by 0.1.
std::vector<double> cd_fidelities(int n);

/// Per-link fidelities of the [2, 2, n] instance in link order.
std::vector<double> experiment_fidelities(int n);

/// Fidelity substituted for schedule entries at or below 1/2 when low
/// fidelities are allowed; maps to p = 0.01.
inline constexpr double kLowFidelityFloor = 0.505;

/// [2, 2, n] instance with the fixed fidelity schedule. Throws
/// std::invalid_argument for n < 2, or when a fidelity falls below 0.55 and
/// allow_low_fidelity is false.
Instance build_experiment_instance(int n, bool allow_low_fidelity = false);

struct AlgoParams {
    /// Unset values take the calibrated default for the bench mode.
    std::optional<double> c;
    std::optional<double> c0;
    std::uint64_t samples_per_arm = 20;
    double halving_resolution = 0.05;
    /// Repetitions per Bench call for adaptive algorithms and uniform ones.
    int t0_adaptive = 10;
    int t0_uniform = 200;
    std::uint64_t round_cap = 1'000'000;

    AlgoParams resolved(BenchMode mode) const;
};

struct ExperimentConfig {
    std::vector<Algo> algos;
    Metric metric = Metric::kFidelity;
    std::vector<NoiseKind> noise_models;
    std::vector<int> n_values;
    int trials = 10;
    double delta = 0.05;
    std::uint64_t seed = 1;
    BenchConfig bench;
    /// Replaces both T0 defaults when set.
    std::optional<int> t0_override;
    bool allow_low_fidelity = false;
    /// Directory receiving one JSON-lines trace per trial.
    std::optional<std::filesystem::path> trace_dir;
    /// 0 means hardware concurrency capped by BEQUP_THREADS.
    unsigned threads = 0;
    AlgoParams params;
    /// Use noiseless feedback instead of benchmarking.
    bool exact_feedback = false;
};

struct ExperimentRecord {
    std::string algo;
    std::string metric;
    std::string noise_model;
    int n = 0;
    std::size_t num_paths = 0;
    std::size_t num_links = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::int64_t output_path = -1;
    std::int64_t true_best = -1;
    bool success = false;
    std::uint64_t resource_cost = 0;
    std::uint64_t rounds = 0;
    double wall_time_ms = 0.0;
    /// Set when the trial threw; not part of the CSV.
    std::string error;
};

/// Seed for one trial, derived from (seed, algo, noise, n, trial).
std::uint64_t trial_seed(std::uint64_t seed, Algo algo, NoiseKind noise, int n, int trial);

/// Bench configuration the algorithm runs with under cfg.
BenchConfig bench_config_for(Algo algo, const ExperimentConfig &cfg);

/// Runs one algorithm against a feedback source.
RunResult run_algorithm(Algo algo, Feedback &feedback, Metric metric, double delta, const AlgoParams &params,
                        Rng &rng, bool record_rounds);

/// One trial; `run` receives the full result when non-null.
ExperimentRecord run_trial(const ExperimentConfig &cfg, Algo algo, NoiseKind noise, int n, int trial,
                           RunResult *run = nullptr);

/// Every (algo, noise, n, trial) cell, in that nesting order regardless of
/// worker count.
std::vector<ExperimentRecord> run_matrix(const ExperimentConfig &cfg);

/// Worker count: requested (or hardware concurrency when 0), capped by the
/// BEQUP_THREADS environment variable, at least 1.
unsigned worker_count(unsigned requested);

inline constexpr std::string_view kCsvHeader =
    "algo,metric,noise_model,n,K,L,trial,seed,output_path,true_best,success,resource_cost,rounds,wall_time_ms";

std::string records_to_csv(const std::vector<ExperimentRecord> &records);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path);
/// Parses records_to_csv output. Throws std::invalid_argument on a bad header.
std::vector<ExperimentRecord> parse_csv(const std::string &text);

struct CellSummary {
    std::string algo;
    std::string noise_model;
    int n = 0;
    std::size_t num_paths = 0;
    int trials = 0;
    double mean_cost = 0.0;
    double se_cost = 0.0;
    double success_rate = 0.0;
};

/// Per (algo, noise, n) means and standard errors, in first-seen order.
std::vector<CellSummary> summarize(const std::vector<ExperimentRecord> &records);

}  // namespace bequp

#endif  // BEQUP_EXPERIMENT_H_
