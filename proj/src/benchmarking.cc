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

#include "bequp/benchmarking.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bequp {

std::string_view bench_mode_name(BenchMode mode) {
    return mode == BenchMode::kPtm ? "ptm" : "surrogate";
}

BenchMode parse_bench_mode(std::string_view name) {
    if (name == "ptm") {
        return BenchMode::kPtm;
    }
    if (name == "surrogate") {
        return BenchMode::kSurrogate;
    }
    throw std::invalid_argument("unknown bench mode: " + std::string(name));
}

void BenchConfig::validate() const {
    if (bounce_set.empty()) {
        throw std::invalid_argument("bounce set is empty");
    }
    for (std::size_t i = 0; i < bounce_set.size(); ++i) {
        if (bounce_set[i] < 1 || (i > 0 && bounce_set[i] <= bounce_set[i - 1])) {
            throw std::invalid_argument("bounce set must be positive and strictly increasing");
        }
    }
    if (t0 < 1) {
        throw std::invalid_argument("T0 must be at least 1");
    }
    if (!(spam_a > 0.0 && spam_a <= 1.0)) {
        throw std::invalid_argument("SPAM constant must lie in (0, 1]");
    }
    if (!(p_clip_lo > 0.0 && p_clip_lo < p_clip_hi && p_clip_hi <= 1.0)) {
        throw std::invalid_argument("invalid p clip range");
    }
}

namespace {

constexpr double kMleAMin = 1e-3;
constexpr double kMleAMax = 1.0;

struct Decay {
    std::span<const int> bounces;
    std::vector<double> successes;
    double shots;
    double offset;
    double scale;

    double q(double a, double p, int m) const { return offset + scale * a * std::pow(p, 2 * m); }

    double log_likelihood(double a, double p) const {
        double ll = 0.0;
        for (std::size_t i = 0; i < bounces.size(); ++i) {
            const double q_m = q(a, p, bounces[i]);
            const double c = successes[i];
            const double f = shots - c;
            if (c > 0.0) {
                if (q_m <= 0.0) {
                    return -std::numeric_limits<double>::infinity();
                }
                ll += c * std::log(q_m);
            }
            if (f > 0.0) {
                if (q_m >= 1.0) {
                    return -std::numeric_limits<double>::infinity();
                }
                ll += f * std::log1p(-q_m);
            }
        }
        return ll;
    }
};

// Projected Fisher scoring over the box [a_lo, a_hi] x [p_lo, p_hi].
void maximize_likelihood(const Decay &d, double &a, double &p, double p_lo, double p_hi) {
    const double lo[2] = {kMleAMin, p_lo};
    const double hi[2] = {kMleAMax, p_hi};
    double x[2] = {a, p};
    double ll = d.log_likelihood(x[0], x[1]);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::Vector2d g = Eigen::Vector2d::Zero();
        Eigen::Matrix2d info = Eigen::Matrix2d::Zero();
        for (std::size_t i = 0; i < d.bounces.size(); ++i) {
            const int m = d.bounces[i];
            const double pm = std::pow(x[1], 2 * m);
            const double q_m = d.offset + d.scale * x[0] * pm;
            const double var = q_m * (1.0 - q_m);
            Eigen::Vector2d dq(d.scale * pm, d.scale * x[0] * 2.0 * m * pm / x[1]);
            const double c = d.successes[i];
            double score = 0.0;
            if (c > 0.0) {
                score += c / q_m;
            }
            if (d.shots - c > 0.0) {
                score -= (d.shots - c) / (1.0 - q_m);
            }
            g += score * dq;
            if (var > 1e-300) {
                info += (d.shots / var) * dq * dq.transpose();
            }
        }
        bool free_var[2];
        for (int j = 0; j < 2; ++j) {
            const bool at_lo = x[j] <= lo[j] && g[j] < 0.0;
            const bool at_hi = x[j] >= hi[j] && g[j] > 0.0;
            free_var[j] = !(at_lo || at_hi);
        }
        Eigen::Vector2d step = Eigen::Vector2d::Zero();
        if (free_var[0] && free_var[1]) {
            Eigen::Matrix2d reg = info;
            reg.diagonal().array() += 1e-12 * (1.0 + reg.diagonal().array());
            step = reg.ldlt().solve(g);
        } else {
            for (int j = 0; j < 2; ++j) {
                if (free_var[j] && info(j, j) > 0.0) {
                    step[j] = g[j] / info(j, j);
                }
            }
        }
        if (!step.allFinite() || step.norm() == 0.0) {
            break;
        }
        double t = 1.0;
        bool improved = false;
        double nx[2];
        for (int halving = 0; halving < 50; ++halving) {
            for (int j = 0; j < 2; ++j) {
                nx[j] = std::clamp(x[j] + t * step[j], lo[j], hi[j]);
            }
            const double nll = d.log_likelihood(nx[0], nx[1]);
            if (nll >= ll) {
                improved = nll > ll || (nx[0] == x[0] && nx[1] == x[1]);
                if (nll > ll) {
                    ll = nll;
                }
                break;
            }
            t *= 0.5;
        }
        if (!improved) {
            break;
        }
        const double moved = std::abs(nx[0] - x[0]) + std::abs(nx[1] - x[1]);
        x[0] = nx[0];
        x[1] = nx[1];
        if (moved < 1e-14) {
            break;
        }
    }
    a = x[0];
    p = x[1];
}

}  // namespace

FitResult fit_exponential(std::span<const int> bounces, std::span<const double> b_hat, const BenchConfig &cfg,
                          Readout readout) {
    if (bounces.size() != b_hat.size() || bounces.empty()) {
        throw std::invalid_argument("fit_exponential: bounce and mean lists differ in length or are empty");
    }
    const double t0 = static_cast<double>(cfg.t0);
    const double floor = 1.0 / (2.0 * t0);

    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t usable = 0;
    std::size_t first_usable = 0;
    for (std::size_t i = 0; i < b_hat.size(); ++i) {
        const double b = b_hat[i];
        if (!(b > floor)) {
            continue;
        }
        if (usable == 0) {
            first_usable = i;
        }
        ++usable;
        const double w = t0 * b / std::max(1.0 - b, floor);
        const double xv = 2.0 * bounces[i];
        const double yv = std::log(std::min(b, 1.0));
        sw += w;
        sx += w * xv;
        sy += w * yv;
        sxx += w * xv * xv;
        sxy += w * xv * yv;
    }

    FitResult out;
    out.insufficient_signal = usable < 2;
    if (usable == 0 || (usable < 2 && !cfg.mle_refine)) {
        out.p_hat = cfg.p_clip_lo;
        out.a_hat = 1.0;
        return out;
    }

    double a0, p0;
    if (usable >= 2) {
        const double det = sw * sxx - sx * sx;
        const double slope = (sw * sxy - sx * sy) / det;
        const double intercept = (sy - slope * sx) / sw;
        p0 = std::exp(slope);
        a0 = std::exp(intercept);
    } else {
        p0 = std::pow(std::min(b_hat[first_usable], 1.0), 1.0 / (2.0 * bounces[first_usable]));
        a0 = 1.0;
    }

    if (cfg.mle_refine) {
        Decay d{bounces, {}, t0, readout == Readout::kPauli ? 0.5 : 0.0, readout == Readout::kPauli ? 0.5 : 1.0};
        d.successes.reserve(b_hat.size());
        for (double b : b_hat) {
            const double q = d.offset + d.scale * b;
            d.successes.push_back(std::clamp(q, 0.0, 1.0) * t0);
        }
        a0 = std::clamp(a0, kMleAMin, kMleAMax);
        p0 = std::clamp(p0, cfg.p_clip_lo, cfg.p_clip_hi);
        maximize_likelihood(d, a0, p0, cfg.p_clip_lo, cfg.p_clip_hi);
    }
    out.p_hat = std::clamp(p0, cfg.p_clip_lo, cfg.p_clip_hi);
    out.a_hat = std::clamp(a0, std::numeric_limits<double>::min(), 1.2);
    return out;
}

namespace {

struct DecayTerms {
    double q, dq, d2q;
};

DecayTerms decay_terms(double p, int m, double a, Readout readout) {
    const double offset = readout == Readout::kPauli ? 0.5 : 0.0;
    const double scale = readout == Readout::kPauli ? 0.5 : 1.0;
    const double pm = std::pow(p, 2 * m);
    return {offset + scale * a * pm, scale * a * 2.0 * m * pm / p, scale * a * 2.0 * m * (2.0 * m - 1.0) * pm / (p * p)};
}

}  // namespace

double known_spam_bias(std::span<const int> bounces, double p, double a, int t0, Readout readout) {
    const double T = static_cast<double>(t0);
    double info = 0.0, k3 = 0.0, k21 = 0.0;
    for (int m : bounces) {
        const DecayTerms d = decay_terms(p, m, a, readout);
        const double v = d.q * (1.0 - d.q);
        if (!(v > 1e-300)) {
            continue;
        }
        const double q1 = d.dq, q1c = q1 * q1 * q1;
        info += T * q1 * q1 / v;
        k3 += (2.0 * T / (d.q * d.q) - 2.0 * T / ((1.0 - d.q) * (1.0 - d.q))) * q1c - 3.0 * T / v * q1 * d.d2q;
        k21 += -(1.0 - 2.0 * d.q) * T / (v * v) * q1c + T / v * q1 * d.d2q;
    }
    if (!(info > 0.0)) {
        return 0.0;
    }
    return (0.5 * k3 + k21) / (info * info);
}

FitResult fit_decay_known_spam(std::span<const int> bounces, std::span<const double> b_hat, double a,
                               const BenchConfig &cfg, Readout readout, bool bias_correct) {
    if (bounces.size() != b_hat.size() || bounces.empty()) {
        throw std::invalid_argument("fit_decay_known_spam: bounce and mean lists differ in length or are empty");
    }
    const double T = static_cast<double>(cfg.t0);
    const double floor = 1.0 / (2.0 * T);
    const double offset = readout == Readout::kPauli ? 0.5 : 0.0;
    const double scale = readout == Readout::kPauli ? 0.5 : 1.0;

    FitResult out;
    out.a_hat = a;
    std::vector<double> succ(b_hat.size());
    double sw = 0.0, swx = 0.0;
    std::size_t usable = 0;
    for (std::size_t i = 0; i < b_hat.size(); ++i) {
        succ[i] = std::clamp(offset + scale * b_hat[i], 0.0, 1.0) * T;
        const double b = b_hat[i];
        if (b > floor) {
            ++usable;
            // Weighted slope through the known intercept ln a.
            const double w = T * b / std::max(1.0 - b, floor);
            const double x = 2.0 * bounces[i];
            sw += w * x * x;
            swx += w * x * (std::log(std::min(b, 1.0)) - std::log(a));
        }
    }
    out.insufficient_signal = usable < 2;
    const double lo = cfg.p_clip_lo, hi = cfg.p_clip_hi;
    double p;
    if (usable > 0) {
        p = std::clamp(std::exp(swx / sw), lo, hi);
    } else if (readout == Readout::kPauli) {
        // Counts near T0/2 still carry likelihood information.
        p = std::clamp(0.5, lo, hi);
    } else {
        out.p_hat = lo;
        return out;
    }

    auto loglik = [&](double x) {
        double ll = 0.0;
        for (std::size_t i = 0; i < bounces.size(); ++i) {
            const double q = decay_terms(x, bounces[i], a, readout).q;
            const double c = succ[i], f = T - succ[i];
            if (c > 0.0) {
                if (q <= 0.0) {
                    return -std::numeric_limits<double>::infinity();
                }
                ll += c * std::log(q);
            }
            if (f > 0.0) {
                if (q >= 1.0) {
                    return -std::numeric_limits<double>::infinity();
                }
                ll += f * std::log1p(-q);
            }
        }
        return ll;
    };
    double ll = loglik(p);
    for (int iter = 0; iter < 100; ++iter) {
        double score = 0.0, info = 0.0;
        for (std::size_t i = 0; i < bounces.size(); ++i) {
            const DecayTerms d = decay_terms(p, bounces[i], a, readout);
            const double v = d.q * (1.0 - d.q);
            const double c = succ[i];
            double s = 0.0;
            if (c > 0.0) {
                s += c / d.q;
            }
            if (T - c > 0.0) {
                s -= (T - c) / (1.0 - d.q);
            }
            score += s * d.dq;
            if (v > 1e-300) {
                info += T * d.dq * d.dq / v;
            }
        }
        if ((p <= lo && score < 0.0) || (p >= hi && score > 0.0) || !(info > 0.0)) {
            break;
        }
        double step = score / info;
        double np = p;
        bool improved = false;
        for (int h = 0; h < 60; ++h) {
            np = std::clamp(p + step, lo, hi);
            const double nll = loglik(np);
            if (nll >= ll) {
                improved = nll > ll;
                ll = nll;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            break;
        }
        const double moved = std::abs(np - p);
        p = np;
        if (moved < 1e-14) {
            break;
        }
    }
    if (bias_correct && p > lo && p < hi) {
        p -= known_spam_bias(bounces, p, a, cfg.t0, readout);
    }
    out.p_hat = std::clamp(p, lo, hi);
    return out;
}

bool surrogate_outcome(double p, int m, double a, Rng &rng) {
    const double prob = a * std::pow(p, 2 * m);
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
}

bool ptm_bounce_outcome(const ChannelPtm &forward, const ChannelPtm &backward, int m, Rng &rng) {
    const CliffordTable &table = CliffordTable::instance();
    std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
    Eigen::Vector4d v(1.0, 0.0, 0.0, 1.0);
    std::size_t word = 0;  // Index 0 is the identity.
    for (int i = 0; i < m; ++i) {
        const std::size_t cs = pick(rng);
        v = forward.matrix * (table[cs] * v);
        const std::size_t cd = pick(rng);
        v = backward.matrix * (table[cd] * v);
        word = table.product(cd, table.product(cs, word));
    }
    v = table[table.inverse_index(word)] * v;
    const double survival = 0.5 * (1.0 + v[3]);
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < survival;
}

bool ptm_bounce_outcome(const ChannelPtm &channel, int m, Rng &rng) {
    return ptm_bounce_outcome(channel, channel, m, rng);
}

BenchResult bench_channel(double p, const ChannelPtm &forward, const ChannelPtm &backward, std::uint64_t cost_units,
                          const BenchConfig &cfg, Rng &rng) {
    const std::size_t nm = cfg.bounce_set.size();
    const double t0 = static_cast<double>(cfg.t0);
    BenchResult r;
    r.cost_units = cost_units;
    r.raw_means.resize(nm);
    std::vector<double> decay(nm);
    Readout readout;
    if (cfg.mode == BenchMode::kSurrogate) {
        readout = Readout::kSurvival;
        for (std::size_t i = 0; i < nm; ++i) {
            const double prob = std::clamp(cfg.spam_a * std::pow(p, 2 * cfg.bounce_set[i]), 0.0, 1.0);
            const int count = std::binomial_distribution<int>(cfg.t0, prob)(rng);
            r.raw_means[i] = count / t0;
            decay[i] = r.raw_means[i];
        }
    } else {
        readout = Readout::kPauli;
        for (std::size_t i = 0; i < nm; ++i) {
            int count = 0;
            for (int shot = 0; shot < cfg.t0; ++shot) {
                count += ptm_bounce_outcome(forward, backward, cfg.bounce_set[i], rng) ? 1 : 0;
            }
            r.raw_means[i] = count / t0;
            decay[i] = 2.0 * r.raw_means[i] - 1.0;
        }
    }
    const double known_a = cfg.mode == BenchMode::kSurrogate ? cfg.spam_a : 1.0;
    FitResult fit = cfg.known_spam ? fit_decay_known_spam(cfg.bounce_set, decay, known_a, cfg, readout)
                                   : fit_exponential(cfg.bounce_set, decay, cfg, readout);
    r.p_hat = fit.p_hat;
    r.a_hat = fit.a_hat;
    r.insufficient_signal = fit.insufficient_signal;
    return r;
}

std::vector<ChannelPtm> assign_noise(const Instance &instance, NoiseKind kind) {
    std::vector<ChannelPtm> out;
    out.reserve(instance.num_links());
    for (double p : instance.link_p()) {
        out.push_back(ptm_of(strength_from_fidelity(kind, fidelity_from_p(p))));
    }
    return out;
}

Benchmarker::Benchmarker(Instance instance, NoiseKind kind, BenchConfig cfg)
    : instance_(std::move(instance)), kind_(kind), cfg_(std::move(cfg)) {
    cfg_.validate();
    link_channels_ = assign_noise(instance_, kind_);
}

BenchResult Benchmarker::bench_link(LinkId l, Rng &rng) const {
    if (l.value >= instance_.num_links()) {
        throw std::out_of_range("link id out of range");
    }
    const ChannelPtm &c = link_channels_[l.value];
    return bench_channel(instance_.link_p(l), c, c, 1, cfg_, rng);
}

BenchResult Benchmarker::bench_path(PathId k, Rng &rng) const {
    auto links = instance_.topology().links_of(k);
    ChannelPtm forward, backward;
    if (cfg_.mode == BenchMode::kPtm) {
        for (LinkId l : links) {
            forward = compose(forward, link_channels_[l.value]);
        }
        for (auto it = links.rbegin(); it != links.rend(); ++it) {
            backward = compose(backward, link_channels_[it->value]);
        }
    }
    return bench_channel(path_depolarizing(instance_, k), forward, backward, links.size(), cfg_, rng);
}

}  // namespace bequp
