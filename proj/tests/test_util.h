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

#ifndef BEQUP_TESTS_TEST_UTIL_H_
#define BEQUP_TESTS_TEST_UTIL_H_

#include <random>
#include <vector>

#include "bequp/network_model.h"
#include "bequp/random.h"

namespace bequp::testing {

// Random series-parallel instance with 2..4 segments of 1..3 links (at least
// two paths) and link p in [0.6, 0.999]; retried until the best path is unique
// by a margin of min_gap.
inline Instance random_segmented_instance(Rng &rng, double min_gap = 1e-6) {
    std::uniform_int_distribution<int> segs(2, 4), width(1, 3);
    std::uniform_real_distribution<double> pdist(0.6, 0.999);
    while (true) {
        std::vector<std::size_t> counts(segs(rng));
        std::size_t K = 1, L = 0;
        for (auto &c : counts) {
            c = width(rng);
            K *= c;
            L += c;
        }
        if (K < 2) {
            continue;
        }
        std::vector<double> p(L);
        for (auto &v : p) {
            v = pdist(rng);
        }
        Instance inst(Topology::segmented(counts), p);
        try {
            auto gaps = compute_gaps(inst);
            if (gaps.path_gaps[gaps.best_path.value] > min_gap) {
                return inst;
            }
        } catch (const DegenerateInstanceError &) {
        }
    }
}

// Random explicit incidence matrix: L in 3..6 links, K in 2..6 distinct
// non-empty rows, link p in [0.6, 0.999].
inline Instance random_explicit_instance(Rng &rng, double min_gap = 1e-6) {
    std::uniform_int_distribution<int> ldist(3, 6), kdist(2, 6);
    std::uniform_real_distribution<double> pdist(0.6, 0.999);
    while (true) {
        const int L = ldist(rng);
        const int K = kdist(rng);
        std::vector<std::vector<std::uint8_t>> rows;
        std::uniform_int_distribution<int> mask(1, (1 << L) - 1);
        while (static_cast<int>(rows.size()) < K) {
            const int m = mask(rng);
            std::vector<std::uint8_t> r(L);
            for (int l = 0; l < L; ++l) {
                r[l] = (m >> l) & 1;
            }
            bool dup = false;
            for (const auto &e : rows) {
                dup = dup || e == r;
            }
            if (!dup) {
                rows.push_back(r);
            }
        }
        std::vector<double> p(L);
        for (auto &v : p) {
            v = pdist(rng);
        }
        Instance inst(Topology::from_incidence(rows), p);
        try {
            auto gaps = compute_gaps(inst);
            if (gaps.path_gaps[gaps.best_path.value] > min_gap) {
                return inst;
            }
        } catch (const DegenerateInstanceError &) {
        }
    }
}

inline Instance diamond(double p1 = 0.9, double p2 = 0.8) {
    const std::size_t counts[1] = {2};
    return Instance(Topology::segmented(counts), {p1, p2});
}

}  // namespace bequp::testing

#endif  // BEQUP_TESTS_TEST_UTIL_H_
