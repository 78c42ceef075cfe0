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

#include "bequp/qkd.h"

#include <gtest/gtest.h>

#include <cmath>

#include "bequp/experiment.h"
#include "bequp/feedback.h"
#include "bequp/link_learner.h"
#include "bequp/path_learner.h"
#include "test_util.h"

namespace bequp {
namespace {

TEST(Werner, Examples) {
    EXPECT_EQ(werner_from_p(1.0), 1.0);
    EXPECT_NEAR(werner_from_p(0.98), 0.9866666666666667, 1e-15);
    Rng rng(1);
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        const double f = fidelity_from_p(p);
        EXPECT_NEAR((4.0 * f - 1.0) / 3.0, werner_from_p(p), 1e-14);
    }
}

TEST(Skf, Examples) {
    EXPECT_EQ(skf(1.0), 1.0);
    EXPECT_NEAR(skf(1e-12), -1.0, 1e-9);
    EXPECT_NEAR(skf(0.9), 0.4272060857680875, 1e-12);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_THROW(skf(0.0), std::invalid_argument);
    for (int i = 1; i < 1000; ++i) {
        EXPECT_LT(skf(i / 1000.0), skf((i + 1) / 1000.0));
    }
}

TEST(TransformedSkf, Examples) {
    const Instance ones(Topology::from_incidence({{1, 0}, {0, 1}}), {1.0, 1.0});
    EXPECT_EQ(transformed_skf(ones, PathId(0)), 0.0);
    EXPECT_EQ(transformed_skf(ones, PathId(1)), 0.0);
    const Instance d = testing::diamond(0.9, 0.8);
    EXPECT_NEAR(transformed_skf(d, PathId(0)), -0.06899287148695156, 1e-14);
    EXPECT_NEAR(transformed_skf(d, PathId(1)), -0.1431008436406733, 1e-14);
    EXPECT_EQ(best_path(d.topology(), skf_weights(d)), PathId(0));
}

TEST(TransformedSkf, OrderingMatchesSkf) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const Instance inst = i % 2 ? testing::random_segmented_instance(rng) : testing::random_explicit_instance(rng);
        const std::size_t K = inst.num_paths();
        PathId arg_u(0);
        for (std::size_t a = 0; a < K; ++a) {
            const double ua = skf(path_werner(inst, PathId(a)));
            if (ua > skf(path_werner(inst, arg_u))) {
                arg_u = PathId(a);
            }
            for (std::size_t b = 0; b < K; ++b) {
                const double ub = skf(path_werner(inst, PathId(b)));
                const double da = transformed_skf(inst, PathId(a)), db = transformed_skf(inst, PathId(b));
                if (std::abs(da - db) > 1e-12) {
                    EXPECT_EQ(ua > ub, da > db);
                }
            }
        }
        EXPECT_EQ(best_path(inst.topology(), skf_weights(inst)), arg_u);
    }
}

TEST(SkfWidening, Example) {
    EXPECT_NEAR(std::abs(std::log(2.8 / 2.6)), 0.07410797215372183, 1e-15);
    EXPECT_TRUE(skf_widening(0.9, 0.8, 0.117783));
    EXPECT_TRUE(skf_widening(0.5, 0.5, 0.0));
}

TEST(SkfWidening, RandomTriples) {
    Rng rng(4);
    std::uniform_real_distribution<double> u(1e-9, 1.0);
    int failures = 0;
    for (int i = 0; i < 100000; ++i) {
        const double a = u(rng), b = u(rng);
        const double eps = std::abs(std::log(a) - std::log(b)) * (1.0 + u(rng));
        failures += !skf_widening(a, b, eps);
    }
    EXPECT_EQ(failures, 0);
}

TEST(SkfAdapter, Transforms) {
    const MetricAdapter m = skf_metric_adapters();
    EXPECT_EQ(m.metric, Metric::kSkf);
    EXPECT_EQ(m.prune_factor(), 2.0);
    EXPECT_EQ(adapter_for(Metric::kFidelity).prune_factor(), 1.0);
    Rng rng(5);
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        EXPECT_NEAR(m.from_log_p(std::log(p)), std::log(werner_from_p(p)), 1e-12);
        EXPECT_EQ(m.link_weight(p), std::log(werner_from_p(p)));
        EXPECT_EQ(adapter_for(Metric::kFidelity).from_log_p(std::log(p)), std::log(p));
    }
    EXPECT_EQ(parse_metric("skf"), Metric::kSkf);
    EXPECT_EQ(metric_name(Metric::kFidelity), "fidelity");
    EXPECT_THROW(parse_metric("rate"), std::invalid_argument);
}

// A one-hop path at p = 0.4 against a two-hop path at p = 0.65 per link:
// the two-hop path wins on fidelity, the one-hop path wins on SKF.
Instance mixed_length() {
    return Instance(Topology::from_incidence({{1, 0, 0}, {0, 1, 1}}), {0.4, 0.65, 0.65});
}

TEST(MetricDivergence, MixedLengthInstance) {
    const Instance inst = mixed_length();
    EXPECT_EQ(true_best_path(inst), PathId(1));
    EXPECT_EQ(compute_gaps(inst.topology(), skf_weights(inst)).best_path, PathId(0));
    for (Metric metric : {Metric::kFidelity, Metric::kSkf}) {
        const PathId want = metric == Metric::kSkf ? PathId(0) : PathId(1);
        {
            ExactFeedback fb(inst);
            LinkLearnerConfig cfg;
            cfg.radius = {1e-3, 0.05};
            cfg.metric = adapter_for(metric);
            Rng rng(1);
            EXPECT_EQ(run_bequp_link(fb, cfg, rng).output_path, want);
        }
        {
            ExactFeedback fb(inst);
            PathLearnerConfig cfg;
            cfg.c0 = 1e-3;
            cfg.metric = adapter_for(metric);
            Rng rng(1);
            EXPECT_EQ(run_bequp_path(fb, cfg, rng).output_path, want);
        }
    }
}

// On the experiment family every path has three links and the metrics agree.
TEST(MetricDivergence, ExperimentFamilyAgrees) {
    for (int n = 2; n <= 7; ++n) {
        const Instance inst = build_experiment_instance(n, true);
        EXPECT_EQ(true_best_path(inst), compute_gaps(inst.topology(), skf_weights(inst)).best_path);
    }
}

}  // namespace
}  // namespace bequp
