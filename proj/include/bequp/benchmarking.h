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

#ifndef BEQUP_BENCHMARKING_H_
#define BEQUP_BENCHMARKING_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bequp/channel.h"
#include "bequp/network_model.h"
#include "bequp/random.h"

namespace bequp {

enum class BenchMode { kSurrogate, kPtm };

std::string_view bench_mode_name(BenchMode mode);
BenchMode parse_bench_mode(std::string_view name);

struct BenchConfig {
    std::vector<int> bounce_set = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int t0 = 10;
    /// SPAM constant of the surrogate decay A p^{2m}.
    double spam_a = 1.0;
    BenchMode mode = BenchMode::kSurrogate;
    double p_clip_lo = 0.01;
    double p_clip_hi = 0.9999;
    /// Bench fits p with A held at its known value (spam_a for the surrogate,
    /// 1 for the ideal-SPAM PTM mode) and removes the first-order bias of the
    /// estimate. Off uses fit_exponential, which also fits A.
    bool known_spam = true;
    /// Refine the log-domain WLS fit by a bounded binomial maximum-likelihood
    /// fit. Off reproduces the plain WLS estimator.
    bool mle_refine = true;

    /// Throws std::invalid_argument on an empty or non-increasing bounce set,
    /// t0 < 1, A outside (0, 1], or bad clip bounds.
    void validate() const;
};

/// How a per-shot success probability relates to the decay b_m.
/// Survival: q = b_m. Pauli: q = (1 + b_m) / 2, the readout of the PTM mode
/// where the survival probability is (1 + <Z>) / 2.
enum class Readout { kSurvival, kPauli };

struct FitResult {
    double a_hat = 1.0;
    double p_hat = 0.0;
    /// Fewer than two bounce lengths cleared the floor 1/(2 T0).
    bool insufficient_signal = false;
};

/// Fits b_m = A p^{2m} to per-m decay estimates b_hat (for Pauli readout,
/// b_hat = 2 * mean - 1). Weighted least squares on ln b_hat over points above
/// 1/(2 T0), with weights T0 b/(1 - b), 1 - b floored at 1/(2 T0); then, if
/// cfg.mle_refine, a binomial likelihood fit over A in [1e-3, 1] and p in the
/// clip range started from the WLS solution. p_hat is clamped to the clip
/// range and a_hat to (0, 1.2]. When no point clears the floor, p_hat is the
/// clip floor and a_hat is 1.
FitResult fit_exponential(std::span<const int> bounces, std::span<const double> b_hat, const BenchConfig &cfg,
                          Readout readout = Readout::kSurvival);

/// Maximum-likelihood p for the binomial decay model with A fixed at `a`,
/// over the clip range. With bias_correct, the estimate is shifted by its
/// first-order (Cox-Snell) bias evaluated at the estimate, unless it sits on
/// a clip bound. For survival readout with no point above 1/(2 T0), the
/// result is the clip floor.
FitResult fit_decay_known_spam(std::span<const int> bounces, std::span<const double> b_hat, double a,
                               const BenchConfig &cfg, Readout readout = Readout::kSurvival,
                               bool bias_correct = true);

/// First-order bias of the known-A estimator at parameter p.
double known_spam_bias(std::span<const int> bounces, double p, double a, int t0, Readout readout);

struct BenchResult {
    double p_hat = 0.0;
    double a_hat = 1.0;
    /// Empirical per-m success frequency of the raw shots.
    std::vector<double> raw_means;
    std::uint64_t cost_units = 0;
    bool insufficient_signal = false;
};

/// One shot of the surrogate: Bernoulli(A p^{2m}).
bool surrogate_outcome(double p, int m, double a, Rng &rng);

/// One bounce sequence on the PTM simulator. Each bounce applies a random
/// Clifford, the forward channel, a random Clifford, and the return channel;
/// the inverse of the Clifford word is applied before measuring Z on |0>.
bool ptm_bounce_outcome(const ChannelPtm &forward, const ChannelPtm &backward, int m, Rng &rng);
bool ptm_bounce_outcome(const ChannelPtm &channel, int m, Rng &rng);

/// Runs Bench on a decay with true parameter p (surrogate) or on the given
/// channel pair (PTM) and fits it.
BenchResult bench_channel(double p, const ChannelPtm &forward, const ChannelPtm &backward, std::uint64_t cost_units,
                          const BenchConfig &cfg, Rng &rng);

/// Per-link channels reaching each link's fidelity under one noise model.
std::vector<ChannelPtm> assign_noise(const Instance &instance, NoiseKind kind);

/// Bench over the links and paths of one instance.
class Benchmarker {
   public:
    Benchmarker(Instance instance, NoiseKind kind, BenchConfig cfg);

    BenchResult bench_link(LinkId l, Rng &rng) const;
    BenchResult bench_path(PathId k, Rng &rng) const;

    const Instance &instance() const { return instance_; }
    const BenchConfig &config() const { return cfg_; }
    NoiseKind noise_kind() const { return kind_; }

   private:
    Instance instance_;
    NoiseKind kind_;
    BenchConfig cfg_;
    std::vector<ChannelPtm> link_channels_;
};

}  // namespace bequp

#endif  // BEQUP_BENCHMARKING_H_
