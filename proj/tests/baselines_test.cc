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

#include <gtest/gtest.h>

#include <cmath>

#include "bequp/benchmarking.h"
#include "bequp/calibration.h"
#include "bequp/experiment.h"
#include "bequp/feedback.h"
#include "bequp/qkd.h"
#include "test_util.h"

namespace bequp {
namespace {

using Runner = RunResult (*)(Feedback &, const BaselineConfig &, Rng &);

BaselineConfig config(std::uint64_t samples = 20) {
    BaselineConfig cfg;
    cfg.samples_per_arm = samples;
    cfg.c = kDefaultRadiusC;
    return cfg;
}

void check_accounting(const Topology &t, const RunResult &r) {
    std::uint64_t cost = 0;
    for (const BenchCall &c : r.calls) {
        cost += c.cost_units;
        EXPECT_EQ(c.cost_units, c.is_path ? t.path_length(PathId(c.target)) : 1u);
    }
    EXPECT_EQ(cost, r.total_cost);
    EXPECT_EQ(audited_cost(r), r.total_cost);
    EXPECT_EQ(r.rounds, r.calls.size());
}

TEST(UniformLink, Accounting) {
    const Instance inst = build_experiment_instance(2);
    ExactFeedback fb(inst);
    Rng rng(1);
    RunResult r = uniform_link(fb, config(1), rng);
    EXPECT_EQ(r.total_cost, 6u);
    check_accounting(inst.topology(), r);
}

TEST(UniformPath, Accounting) {
    const Instance inst = build_experiment_instance(2);
    ExactFeedback fb(inst);
    Rng rng(1);
    RunResult r = uniform_path(fb, config(1), rng);
    EXPECT_EQ(r.total_cost, 24u);
    check_accounting(inst.topology(), r);
}

TEST(UniformPath, CostLinearInPathCount) {
    for (int n = 2; n <= 7; ++n) {
        const Instance inst = build_experiment_instance(n, true);
        BenchFeedback fb(Benchmarker(inst, NoiseKind::kDepolarizing, BenchConfig{}));
        Rng rng(2);
        RunResult r = uniform_path(fb, config(20), rng);
        EXPECT_EQ(r.total_cost, 20u * 3u * inst.num_paths());
    }
}

TEST(Baselines, NoiselessFeedbackFindsBestPath) {
    const std::pair<const char *, Runner> runners[] = {
        {"uniform-link", uniform_link},
        {"uniform-path", uniform_path},
        {"succ-elim", succ_elim},
        {"linkselfie", linkselfie_style},
    };
    Rng gen(7);
    for (int i = 0; i < 50; ++i) {
        const Instance inst =
            i % 2 ? testing::random_segmented_instance(gen, 0.02) : testing::random_explicit_instance(gen, 0.02);
        const PathId best = true_best_path(inst);
        for (auto [name, run] : runners) {
            ExactFeedback fb(inst);
            Rng rng(i);
            RunResult r = run(fb, config(1), rng);
            EXPECT_EQ(r.output_path, best) << name << " instance " << i;
            EXPECT_FALSE(r.budget_exhausted);
            check_accounting(inst.topology(), r);
        }
    }
}

TEST(UniformLink, SkfMetric) {
    const Instance inst(Topology::from_incidence({{1, 0, 0}, {0, 1, 1}}), {0.4, 0.65, 0.65});
    ExactFeedback fb(inst);
    auto cfg = config(1);
    cfg.metric = skf_metric_adapters();
    Rng rng(1);
    EXPECT_EQ(uniform_link(fb, cfg, rng).output_path, PathId(0));
}

TEST(Baselines, PathArmsRejectSkf) {
    const Instance inst = testing::diamond();
    auto cfg = config(1);
    cfg.metric = skf_metric_adapters();
    for (Runner run : {uniform_path, succ_elim, linkselfie_style}) {
        ExactFeedback fb(inst);
        Rng rng(1);
        EXPECT_THROW(run(fb, cfg, rng), UnsupportedMetricError);
        EXPECT_EQ(fb.total_cost(), 0u);
    }
}

TEST(UniformLink, DiamondSuccessRate) {
    const Instance d = testing::diamond(0.9, 0.8);
    BenchConfig bench;
    bench.t0 = 200;
    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        BenchFeedback fb(Benchmarker(d, NoiseKind::kDepolarizing, bench));
        Rng rng(derive_seed(11, static_cast<std::uint64_t>(seed)));
        ok += uniform_link(fb, config(20), rng).output_path == PathId(0);
    }
    EXPECT_GE(ok, 95);
}

// Splits the call log into rounds (ids ascend within a round).
std::vector<std::size_t> round_sizes(const RunResult &r) {
    std::vector<std::size_t> sizes;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < r.calls.size(); ++i) {
        if (i == 0 || r.calls[i].target <= prev) {
            sizes.push_back(0);
        }
        ++sizes.back();
        prev = r.calls[i].target;
    }
    return sizes;
}

TEST(SuccElim, OneRoundWhenRadiusIsSmall) {
    const Instance inst = build_experiment_instance(3);
    ExactFeedback fb(inst);
    auto cfg = config();
    cfg.c = 1e-6;
    Rng rng(1);
    RunResult r = succ_elim(fb, cfg, rng);
    EXPECT_EQ(r.phases, 1u);
    EXPECT_EQ(r.calls.size(), inst.num_paths());
    EXPECT_EQ(r.output_path, true_best_path(inst));
}

TEST(SuccElim, SurvivorsShrinkWeakly) {
    const Instance inst = build_experiment_instance(4);
    for (int seed = 0; seed < 10; ++seed) {
        BenchFeedback fb(Benchmarker(inst, NoiseKind::kDepolarizing, BenchConfig{}));
        Rng rng(seed);
        RunResult r = succ_elim(fb, config(), rng);
        const auto sizes = round_sizes(r);
        EXPECT_EQ(sizes.size(), r.phases);
        EXPECT_EQ(sizes.front(), inst.num_paths());
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            EXPECT_LE(sizes[i], sizes[i - 1]);
        }
        check_accounting(inst.topology(), r);
    }
}

TEST(Linkselfie, PhasesBoundedByLogK) {
    for (int n = 2; n <= 5; ++n) {
        const Instance inst = build_experiment_instance(n);
        BenchFeedback fb(Benchmarker(inst, NoiseKind::kDepolarizing, BenchConfig{}));
        Rng rng(3);
        RunResult r = linkselfie_style(fb, config(), rng);
        EXPECT_LE(r.phases, static_cast<std::uint64_t>(std::ceil(std::log2(inst.num_paths()))));
        check_accounting(inst.topology(), r);
    }
}

TEST(Baselines, CallCap) {
    const Instance inst = build_experiment_instance(3);
    auto cfg = config();
    cfg.call_cap = 5;
    cfg.c = 10.0;
    for (Runner run : {succ_elim, linkselfie_style}) {
        BenchFeedback fb(Benchmarker(inst, NoiseKind::kDepolarizing, BenchConfig{}));
        Rng rng(1);
        RunResult r = run(fb, cfg, rng);
        EXPECT_TRUE(r.budget_exhausted);
        check_accounting(inst.topology(), r);
    }
}

}  // namespace
}  // namespace bequp
