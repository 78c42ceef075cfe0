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

#include "bequp/experiment.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace bequp {
namespace {

TEST(Fidelities, Schedule) {
    const std::vector<double> seven = {0.99, 0.95, 0.85, 0.75, 0.65, 0.55, 0.45};
    const auto got = cd_fidelities(7);
    ASSERT_EQ(got.size(), seven.size());
    for (std::size_t i = 0; i < seven.size(); ++i) {
        EXPECT_NEAR(got[i], seven[i], 1e-15);
    }
    const std::vector<double> two = {0.99, 0.90, 0.99, 0.90, 0.99, 0.95};
    EXPECT_EQ(experiment_fidelities(2), two);
}

TEST(BuildInstance, SmallN) {
    const Instance inst = build_experiment_instance(2);
    EXPECT_EQ(inst.num_links(), 6u);
    EXPECT_EQ(inst.num_paths(), 8u);
    const PathId best = true_best_path(inst);
    for (LinkId l : inst.topology().links_of(best)) {
        EXPECT_NEAR(inst.link_p(l), p_from_fidelity(0.99), 1e-12);
    }
    EXPECT_NEAR(inst.link_p(LinkId(1)), p_from_fidelity(0.90), 1e-12);
}

TEST(BuildInstance, LowFidelityGuard) {
    EXPECT_NO_THROW(build_experiment_instance(6));
    EXPECT_THROW(build_experiment_instance(7), std::invalid_argument);
    const Instance inst = build_experiment_instance(7, true);
    EXPECT_EQ(inst.num_paths(), 28u);
    EXPECT_NEAR(inst.link_p(LinkId(inst.num_links() - 1)), p_from_fidelity(kLowFidelityFloor), 1e-12);
    EXPECT_THROW(build_experiment_instance(1), std::invalid_argument);
}

TEST(BuildInstance, UniqueBestForAllN) {
    for (int n = 2; n <= 12; ++n) {
        const Instance inst = build_experiment_instance(n, true);
        const GapReport g = compute_gaps(inst);
        EXPECT_GT(g.path_gaps[g.best_path.value], 1e-3);
        EXPECT_EQ(inst.topology().rank(), static_cast<std::size_t>(n + 2));
    }
}

TEST(Algo, Names) {
    for (Algo a : kAllAlgos) {
        EXPECT_EQ(parse_algo(algo_name(a)), a);
    }
    EXPECT_THROW(parse_algo("greedy"), std::invalid_argument);
    int skf = 0;
    for (Algo a : kAllAlgos) {
        skf += supports_metric(a, Metric::kSkf);
        EXPECT_TRUE(supports_metric(a, Metric::kFidelity));
    }
    EXPECT_EQ(skf, 3);
}

TEST(TrialSeed, DistinctPerKey) {
    std::set<std::uint64_t> seen;
    for (Algo a : kAllAlgos) {
        for (NoiseKind k : kAllNoiseKinds) {
            for (int n = 2; n <= 7; ++n) {
                for (int t = 0; t < 10; ++t) {
                    EXPECT_TRUE(seen.insert(trial_seed(1, a, k, n, t)).second);
                }
            }
        }
    }
    EXPECT_NE(trial_seed(1, Algo::kBequpLink, NoiseKind::kDepolarizing, 2, 0),
              trial_seed(2, Algo::kBequpLink, NoiseKind::kDepolarizing, 2, 0));
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.algos = {Algo::kBequpLink};
    cfg.noise_models = {NoiseKind::kDepolarizing};
    cfg.n_values = {2};
    cfg.trials = 10;
    cfg.seed = 5;
    return cfg;
}

std::string strip_wall_time(const std::string &csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(',')) + "\n";
    }
    return out;
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(RunMatrix, CountsAndCsvShape) {
    const auto records = run_matrix(small_config());
    ASSERT_EQ(records.size(), 10u);
    const std::string csv = records_to_csv(records);
    EXPECT_EQ(count_lines(csv), 11u);
    EXPECT_EQ(csv.substr(0, kCsvHeader.size()), kCsvHeader);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(records_to_csv({}), std::string(kCsvHeader) + "\n");
    for (const auto &r : records) {
        EXPECT_EQ(r.success, r.output_path == r.true_best);
        EXPECT_TRUE(r.error.empty());
        EXPECT_EQ(r.resource_cost, r.rounds);
    }
}

TEST(RunMatrix, DeterministicAcrossRunsAndThreads) {
    ExperimentConfig cfg = small_config();
    cfg.algos = {Algo::kBequpLink, Algo::kUniformLink, Algo::kSuccElim};
    cfg.noise_models = {NoiseKind::kDepolarizing, NoiseKind::kDephasing};
    cfg.n_values = {2, 3};
    cfg.trials = 3;
    cfg.threads = 1;
    const std::string a = strip_wall_time(records_to_csv(run_matrix(cfg)));
    const std::string b = strip_wall_time(records_to_csv(run_matrix(cfg)));
    cfg.threads = 4;
    const std::string c = strip_wall_time(records_to_csv(run_matrix(cfg)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(count_lines(a), 1u + 3u * 2u * 2u * 3u);
}

TEST(Csv, RoundTrip) {
    ExperimentConfig cfg = small_config();
    cfg.algos = {Algo::kBequpLink, Algo::kUniformPath};
    cfg.trials = 2;
    const auto records = run_matrix(cfg);
    const auto back = parse_csv(records_to_csv(records));
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(back[i].algo, records[i].algo);
        EXPECT_EQ(back[i].metric, records[i].metric);
        EXPECT_EQ(back[i].noise_model, records[i].noise_model);
        EXPECT_EQ(back[i].n, records[i].n);
        EXPECT_EQ(back[i].num_paths, records[i].num_paths);
        EXPECT_EQ(back[i].num_links, records[i].num_links);
        EXPECT_EQ(back[i].trial, records[i].trial);
        EXPECT_EQ(back[i].seed, records[i].seed);
        EXPECT_EQ(back[i].output_path, records[i].output_path);
        EXPECT_EQ(back[i].true_best, records[i].true_best);
        EXPECT_EQ(back[i].success, records[i].success);
        EXPECT_EQ(back[i].resource_cost, records[i].resource_cost);
        EXPECT_EQ(back[i].rounds, records[i].rounds);
    }
    EXPECT_THROW(parse_csv("algo,metric\nx,y\n"), std::invalid_argument);
}

TEST(Csv, EmitWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "bequp_experiment_test.csv";
    emit_csv({}, path);
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::filesystem::remove(path);
    EXPECT_EQ(text, std::string(kCsvHeader) + "\n");
    EXPECT_THROW(emit_csv({}, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST(RunTrial, FailuresAreRecorded) {
    ExperimentConfig cfg = small_config();
    cfg.metric = Metric::kSkf;
    const ExperimentRecord r = run_trial(cfg, Algo::kSuccElim, NoiseKind::kDepolarizing, 2, 0);
    EXPECT_FALSE(r.success);
    EXPECT_FALSE(r.error.empty());
    cfg.metric = Metric::kFidelity;
    const ExperimentRecord low = run_trial(cfg, Algo::kBequpLink, NoiseKind::kDepolarizing, 7, 0);
    EXPECT_FALSE(low.success);
    EXPECT_FALSE(low.error.empty());
    cfg.algos = {Algo::kBequpLink};
    cfg.n_values = {2, 7};
    cfg.trials = 1;
    EXPECT_EQ(run_matrix(cfg).size(), 2u);
}

TEST(RunTrial, CostMatchesTraceAudit) {
    ExperimentConfig cfg = small_config();
    for (Algo a : kAllAlgos) {
        for (int t = 0; t < 3; ++t) {
            RunResult run;
            const ExperimentRecord r = run_trial(cfg, a, NoiseKind::kAmplitudeDamping, 2, t, &run);
            ASSERT_TRUE(r.error.empty()) << r.error;
            EXPECT_EQ(audited_cost(run), r.resource_cost) << algo_name(a);
        }
    }
}

TEST(RunTrial, TraceFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "bequp_trace_test";
    std::filesystem::remove_all(dir);
    ExperimentConfig cfg = small_config();
    cfg.trace_dir = dir;
    run_trial(cfg, Algo::kBequpLink, NoiseKind::kDepolarizing, 2, 0);
    run_trial(cfg, Algo::kBequpPath, NoiseKind::kDepolarizing, 2, 1);
    std::ifstream link(dir / "bequp-link_fidelity_depolarizing_n2_t0.jsonl");
    std::ifstream path(dir / "bequp-path_fidelity_depolarizing_n2_t1.jsonl");
    ASSERT_TRUE(link && path);
    std::string line;
    int lines = 0;
    while (std::getline(link, line)) {
        const auto j = nlohmann::json::parse(line);
        for (const char *k : {"t", "k_hat", "k_tilde", "chosen_link", "feedback", "N_after"}) {
            EXPECT_TRUE(j.contains(k)) << k;
        }
        ++lines;
    }
    EXPECT_GE(lines, 1);
    lines = 0;
    while (std::getline(path, line)) {
        const auto j = nlohmann::json::parse(line);
        for (const char *k : {"h", "s", "|S|", "delta_hs", "eps_hs", "N", "k_best", "pruned"}) {
            EXPECT_TRUE(j.contains(k)) << k;
        }
        EXPECT_TRUE(j.at("pruned").is_array());
        ++lines;
    }
    EXPECT_GE(lines, 1);
    std::filesystem::remove_all(dir);
}

TEST(Summarize, MeanAndStandardError) {
    std::vector<ExperimentRecord> recs(4);
    const double costs[4] = {10, 20, 30, 60};
    for (int i = 0; i < 4; ++i) {
        recs[i].algo = "uniform-link";
        recs[i].noise_model = "dephasing";
        recs[i].n = 2;
        recs[i].num_paths = 8;
        recs[i].trial = i;
        recs[i].resource_cost = static_cast<std::uint64_t>(costs[i]);
        recs[i].success = i != 3;
    }
    const auto s = summarize(recs);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].trials, 4);
    EXPECT_DOUBLE_EQ(s[0].mean_cost, 30.0);
    // Sample variance (400 + 100 + 0 + 900) / 3, divided by n.
    EXPECT_NEAR(s[0].se_cost, std::sqrt(1400.0 / 3.0 / 4.0), 1e-12);
    EXPECT_DOUBLE_EQ(s[0].success_rate, 0.75);
}

TEST(WorkerCount, EnvironmentCap) {
    ::setenv("BEQUP_THREADS", "2", 1);
    EXPECT_EQ(worker_count(8), 2u);
    EXPECT_EQ(worker_count(1), 1u);
    ::setenv("BEQUP_THREADS", "junk", 1);
    EXPECT_EQ(worker_count(3), 3u);
    ::unsetenv("BEQUP_THREADS");
    EXPECT_EQ(worker_count(5), 5u);
}

TEST(AlgoParams, ModeDefaults) {
    AlgoParams p;
    EXPECT_EQ(*p.resolved(BenchMode::kSurrogate).c, kDefaultRadiusC);
    EXPECT_EQ(*p.resolved(BenchMode::kPtm).c, kDefaultRadiusCPtm);
    EXPECT_EQ(*p.resolved(BenchMode::kPtm).c0, kDefaultC0Ptm);
    p.c = 0.5;
    EXPECT_EQ(*p.resolved(BenchMode::kPtm).c, 0.5);
}

}  // namespace
}  // namespace bequp
