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

#include "bequp/calibration.h"

#include <algorithm>
#include <cmath>

#include "bequp/experiment.h"
#include "bequp/feedback.h"
#include "bequp/path_learner.h"

namespace bequp {

RadiusCalibrationResult calibrate_radius_constant(const RadiusCalibrationConfig &cfg) {
    RadiusCalibrationResult out;
    const int max_n = *std::max_element(cfg.sample_counts.begin(), cfg.sample_counts.end());
    for (BenchMode mode : cfg.modes) {
    BenchConfig bench = cfg.bench;
    bench.mode = mode;
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
        const double p = cfg.p_values[pi];
        const ChannelPtm channel = ptm_of(strength_from_fidelity(NoiseKind::kDepolarizing, fidelity_from_p(p)));
        // deviations[n index][run]
        std::vector<std::vector<double>> dev(cfg.sample_counts.size(), std::vector<double>(cfg.runs));
        for (int run = 0; run < cfg.runs; ++run) {
            Rng rng(derive_seed(derive_seed(derive_seed(cfg.seed, bench_mode_name(mode)), pi),
                                static_cast<std::uint64_t>(run)));
            double sum = 0.0;
            for (int i = 1; i <= max_n; ++i) {
                sum += bench_channel(p, channel, channel, 1, bench, rng).p_hat;
                for (std::size_t ni = 0; ni < cfg.sample_counts.size(); ++ni) {
                    if (cfg.sample_counts[ni] == i) {
                        dev[ni][run] = std::abs(sum / i - p);
                    }
                }
            }
        }
        for (std::size_t ni = 0; ni < cfg.sample_counts.size(); ++ni) {
            std::vector<double> d = dev[ni];
            std::sort(d.begin(), d.end());
            for (double delta : cfg.deltas) {
                const auto idx = static_cast<std::size_t>(
                    std::min<double>(d.size() - 1, std::ceil((1.0 - delta) * static_cast<double>(d.size())) - 1));
                const double n = cfg.sample_counts[ni];
                const double ratio = d[idx] / std::sqrt(std::log(1.0 / delta) / n);
                out.cells.push_back({mode, p, cfg.sample_counts[ni], delta, ratio});
                out.c_root = std::max(out.c_root, ratio);
            }
        }
    }
    }
    out.c = out.c_root * out.c_root;
    return out;
}

CoverageResult link_est_coverage(const Instance &instance, NoiseKind kind, const BenchConfig &bench, double eps,
                                 double delta, double c0, int runs, std::uint64_t seed) {
    const Topology &topo = instance.topology();
    const auto paths = topo.all_paths();
    const DesignWeights design = optimal_design(topo, paths);
    CoverageResult out;
    out.runs = runs;
    out.n = link_est_sample_size(eps, delta, topo.num_links(), c0);
    Eigen::VectorXd truth(static_cast<Eigen::Index>(topo.num_links()));
    for (std::size_t l = 0; l < topo.num_links(); ++l) {
        truth[static_cast<Eigen::Index>(l)] = std::log(instance.link_p(LinkId(l)));
    }
    const Eigen::VectorXd true_scores = topo.incidence() * truth;
    int covered = 0;
    for (int run = 0; run < runs; ++run) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(run)));
        BenchFeedback fb(Benchmarker(instance, kind, bench));
        const LinkLogEstimate est = link_est(fb, design, out.n, rng);
        const double err = (topo.incidence() * est.log_p_hat - true_scores).cwiseAbs().maxCoeff();
        if (err <= eps) {
            ++covered;
        }
    }
    out.coverage = static_cast<double>(covered) / runs;
    return out;
}

C0CalibrationResult calibrate_c0(const C0CalibrationConfig &cfg) {
    C0CalibrationResult out;
    for (double c0 = cfg.start; c0 <= cfg.stop; c0 *= cfg.growth) {
        out.coverage.clear();
        bool ok = true;
        std::uint64_t setting_idx = 0;
        for (const auto &s : cfg.settings) {
            const Instance inst = build_experiment_instance(s.n);
            for (NoiseKind kind : cfg.noise) {
                const auto cov = link_est_coverage(inst, kind, cfg.bench, s.eps, s.delta, c0, cfg.runs,
                                                   derive_seed(cfg.seed, setting_idx++));
                out.coverage.push_back(cov);
                if (cov.coverage < 1.0 - s.delta * cfg.target_scale) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                break;
            }
        }
        if (ok) {
            out.c0 = c0;
            return out;
        }
    }
    throw std::runtime_error("no C0 on the grid reaches the coverage target");
}

}  // namespace bequp
