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

#ifndef BEQUP_QKD_H_
#define BEQUP_QKD_H_

#include "bequp/metric.h"
#include "bequp/network_model.h"

namespace bequp {

/// w = (2p + 1) / 3.
double werner_from_p(double p);

/// Binary entropy in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

/// u = 1 - 2 h((1 - w) / 2) for w in (0, 1].
double skf(double w_path);

/// Product of link Werner parameters along k.
double path_werner(const Instance &instance, PathId k);

/// U(k) = sum over links of ln((2p + 1) / 3).
double transformed_skf(const Instance &instance, PathId k);

/// Per-link SKF weights ln((2p + 1) / 3).
std::vector<double> skf_weights(const Instance &instance);

/// Checks |ln((2a+1)/3) - ln((2b+1)/3)| <= 2 eps. The premise
/// |ln a - ln b| <= eps is the caller's responsibility.
bool skf_widening(double a, double b, double eps);

/// Adapter set for the secret-key-fraction metric.
MetricAdapter skf_metric_adapters();

}  // namespace bequp

#endif  // BEQUP_QKD_H_
