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

#ifndef BEQUP_FEEDBACK_H_
#define BEQUP_FEEDBACK_H_

#include <cstdint>
#include <vector>

#include "bequp/benchmarking.h"
#include "bequp/network_model.h"
#include "bequp/random.h"
#include "bequp/run_result.h"

namespace bequp {

/// Source of link-level and path-level feedback. Every query is charged here
/// (1 unit per link, L(k) per path) and logged, so learners cannot bypass the
/// accounting.
class Feedback {
   public:
    virtual ~Feedback() = default;

    double query_link(LinkId l, Rng &rng);
    double query_path(PathId k, Rng &rng);

    virtual const Topology &topology() const = 0;

    std::uint64_t total_cost() const { return total_cost_; }
    const std::vector<BenchCall> &calls() const { return calls_; }
    /// Hands the call log to the caller and clears it.
    std::vector<BenchCall> take_calls();

   protected:
    virtual double do_link(LinkId l, Rng &rng) = 0;
    virtual double do_path(PathId k, Rng &rng) = 0;

   private:
    std::uint64_t total_cost_ = 0;
    std::vector<BenchCall> calls_;
};

/// Noiseless oracle: returns true link p and path products.
class ExactFeedback final : public Feedback {
   public:
    explicit ExactFeedback(Instance instance) : instance_(std::move(instance)) {}
    const Topology &topology() const override { return instance_.topology(); }

   protected:
    double do_link(LinkId l, Rng &rng) override;
    double do_path(PathId k, Rng &rng) override;

   private:
    Instance instance_;
};

/// Feedback from simulated benchmarking.
class BenchFeedback final : public Feedback {
   public:
    explicit BenchFeedback(Benchmarker bench) : bench_(std::move(bench)) {}
    const Topology &topology() const override { return bench_.instance().topology(); }
    const Benchmarker &benchmarker() const { return bench_; }

   protected:
    double do_link(LinkId l, Rng &rng) override;
    double do_path(PathId k, Rng &rng) override;

   private:
    Benchmarker bench_;
};

}  // namespace bequp

#endif  // BEQUP_FEEDBACK_H_
