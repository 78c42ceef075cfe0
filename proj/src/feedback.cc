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

#include "bequp/feedback.h"

#include <cstdio>
#include <sstream>

namespace bequp {

double Feedback::query_link(LinkId l, Rng &rng) {
    if (l.value >= topology().num_links()) {
        throw std::out_of_range("link id out of range");
    }
    const double v = do_link(l, rng);
    total_cost_ += 1;
    calls_.push_back({false, l.value, v, 1});
    return v;
}

double Feedback::query_path(PathId k, Rng &rng) {
    const std::uint64_t cost = topology().path_length(k);
    const double v = do_path(k, rng);
    total_cost_ += cost;
    calls_.push_back({true, k.value, v, cost});
    return v;
}

std::vector<BenchCall> Feedback::take_calls() {
    std::vector<BenchCall> out;
    out.swap(calls_);
    return out;
}

double ExactFeedback::do_link(LinkId l, Rng &) {
    return instance_.link_p(l);
}

double ExactFeedback::do_path(PathId k, Rng &) {
    return path_depolarizing(instance_, k);
}

double BenchFeedback::do_link(LinkId l, Rng &rng) {
    return bench_.bench_link(l, rng).p_hat;
}

double BenchFeedback::do_path(PathId k, Rng &rng) {
    return bench_.bench_path(k, rng).p_hat;
}

std::uint64_t audited_cost(const RunResult &result) {
    std::uint64_t q = 0;
    for (const auto &c : result.calls) {
        q += c.cost_units;
    }
    return q;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string trace_jsonl(const RunResult &result) {
    std::ostringstream out;
    for (const auto &r : result.link_rounds) {
        out << "{\"t\":" << r.t << ",\"k_hat\":" << r.k_hat.value << ",\"k_tilde\":" << r.k_tilde.value
            << ",\"chosen_link\":" << (r.chosen_link ? std::to_string(r.chosen_link->value) : "null")
            << ",\"feedback\":" << (r.feedback ? num(*r.feedback) : "null")
            << ",\"N_after\":" << (r.n_after ? std::to_string(*r.n_after) : "null") << "}\n";
    }
    for (const auto &r : result.path_rounds) {
        out << "{\"h\":" << r.h << ",\"s\":" << r.s << ",\"|S|\":" << r.set_size << ",\"delta_hs\":" << num(r.delta_hs)
            << ",\"eps_hs\":" << num(r.eps_hs) << ",\"N\":" << r.n << ",\"k_best\":" << r.k_best.value
            << ",\"pruned\":[";
        for (std::size_t i = 0; i < r.pruned.size(); ++i) {
            out << (i ? "," : "") << r.pruned[i].value;
        }
        out << "]}\n";
    }
    return out.str();
}

}  // namespace bequp
