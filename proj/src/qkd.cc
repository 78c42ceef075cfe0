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

#include <cmath>
#include <stdexcept>
#include <string>

namespace bequp {

double werner_from_p(double p) {
    return (2.0 * p + 1.0) / 3.0;
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double skf(double w_path) {
    if (!(w_path > 0.0 && w_path <= 1.0)) {
        throw std::invalid_argument("Werner parameter must lie in (0, 1]");
    }
    return 1.0 - 2.0 * binary_entropy((1.0 - w_path) / 2.0);
}

double path_werner(const Instance &instance, PathId k) {
    double w = 1.0;
    for (LinkId l : instance.topology().links_of(k)) {
        w *= werner_from_p(instance.link_p(l));
    }
    return w;
}

double transformed_skf(const Instance &instance, PathId k) {
    double u = 0.0;
    for (LinkId l : instance.topology().links_of(k)) {
        u += std::log(werner_from_p(instance.link_p(l)));
    }
    return u;
}

std::vector<double> skf_weights(const Instance &instance) {
    std::vector<double> w;
    for (double p : instance.link_p()) {
        w.push_back(std::log(werner_from_p(p)));
    }
    return w;
}

bool skf_widening(double a, double b, double eps) {
    return std::abs(std::log(werner_from_p(a)) - std::log(werner_from_p(b))) <= 2.0 * eps;
}

MetricAdapter skf_metric_adapters() {
    return MetricAdapter{Metric::kSkf};
}

std::string_view metric_name(Metric metric) {
    return metric == Metric::kSkf ? "skf" : "fidelity";
}

Metric parse_metric(std::string_view name) {
    if (name == "fidelity") {
        return Metric::kFidelity;
    }
    if (name == "skf") {
        return Metric::kSkf;
    }
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

double MetricAdapter::link_weight(double p) const {
    return metric == Metric::kSkf ? std::log(werner_from_p(p)) : std::log(p);
}

double MetricAdapter::from_log_p(double log_p) const {
    return metric == Metric::kSkf ? std::log(werner_from_p(std::exp(log_p))) : log_p;
}

double MetricAdapter::prune_factor() const {
    return metric == Metric::kSkf ? 2.0 : 1.0;
}

std::vector<double> MetricAdapter::link_weights(const std::vector<double> &p) const {
    std::vector<double> w;
    w.reserve(p.size());
    for (double v : p) {
        w.push_back(link_weight(v));
    }
    return w;
}

MetricAdapter adapter_for(Metric metric) {
    return MetricAdapter{metric};
}

}  // namespace bequp
