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

#include "bequp/channel.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bequp {

bool ChannelPtm::is_trace_preserving(double tol) const {
    return std::abs(matrix(0, 0) - 1.0) <= tol && std::abs(matrix(0, 1)) <= tol && std::abs(matrix(0, 2)) <= tol &&
           std::abs(matrix(0, 3)) <= tol;
}

std::string_view noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::kDepolarizing:
            return "depolarizing";
        case NoiseKind::kDephasing:
            return "dephasing";
        case NoiseKind::kAmplitudeDamping:
            return "amplitude_damping";
        case NoiseKind::kBitFlip:
            return "bit_flip";
    }
    throw std::logic_error("unknown noise kind");
}

NoiseKind parse_noise_kind(std::string_view name) {
    std::string normalized(name);
    for (char &c : normalized) {
        if (c == '-') {
            c = '_';
        }
    }
    for (NoiseKind k : kAllNoiseKinds) {
        if (noise_kind_name(k) == normalized) {
            return k;
        }
    }
    throw std::invalid_argument("unknown noise model: " + std::string(name));
}

ChannelPtm ptm_of(const NoiseModel &model) {
    const double q = model.strength;
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("noise strength must lie in [0, 1]");
    }
    ChannelPtm c;
    switch (model.kind) {
        case NoiseKind::kDepolarizing:
            c.matrix.diagonal() << 1.0, 1.0 - q, 1.0 - q, 1.0 - q;
            break;
        case NoiseKind::kDephasing:
            c.matrix.diagonal() << 1.0, 1.0 - 2.0 * q, 1.0 - 2.0 * q, 1.0;
            break;
        case NoiseKind::kBitFlip:
            c.matrix.diagonal() << 1.0, 1.0, 1.0 - 2.0 * q, 1.0 - 2.0 * q;
            break;
        case NoiseKind::kAmplitudeDamping: {
            const double s = std::sqrt(1.0 - q);
            c.matrix.diagonal() << 1.0, s, s, 1.0 - q;
            c.matrix(3, 0) = q;
            break;
        }
    }
    return c;
}

double effective_depolarizing(const ChannelPtm &channel) {
    return channel.unital_block().trace() / 3.0;
}

double average_fidelity(const ChannelPtm &channel) {
    return 0.5 + channel.unital_block().trace() / 6.0;
}

NoiseModel strength_from_fidelity(NoiseKind kind, double f) {
    NoiseModel m{kind, 0.0};
    switch (kind) {
        case NoiseKind::kDepolarizing:
            if (!(f >= 0.5 && f <= 1.0)) {
                throw std::invalid_argument("depolarizing fidelity must lie in [1/2, 1]");
            }
            m.strength = 2.0 * (1.0 - f);
            break;
        case NoiseKind::kDephasing:
        case NoiseKind::kBitFlip:
            if (!(f >= 1.0 / 3.0 && f <= 1.0)) {
                throw std::invalid_argument("dephasing/bit-flip fidelity must lie in [1/3, 1]");
            }
            m.strength = 1.5 * (1.0 - f);
            break;
        case NoiseKind::kAmplitudeDamping: {
            if (!(f >= 0.5 && f <= 1.0)) {
                throw std::invalid_argument("amplitude-damping fidelity must lie in [1/2, 1]");
            }
            // s = sqrt(1 - gamma) solves s^2 + 2s = 3(2f - 1).
            const double s = std::sqrt(6.0 * f - 2.0) - 1.0;
            m.strength = std::clamp(1.0 - s * s, 0.0, 1.0);
            break;
        }
    }
    return m;
}

ChannelPtm compose(const ChannelPtm &a, const ChannelPtm &b) {
    return ChannelPtm{b.matrix * a.matrix};
}

namespace {

Eigen::Matrix4d hadamard_ptm() {
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(0, 0) = 1.0;
    h(3, 1) = 1.0;   // X -> Z
    h(2, 2) = -1.0;  // Y -> -Y
    h(1, 3) = 1.0;   // Z -> X
    return h;
}

Eigen::Matrix4d phase_ptm() {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = 1.0;
    s(2, 1) = 1.0;   // X -> Y
    s(1, 2) = -1.0;  // Y -> -X
    s(3, 3) = 1.0;
    return s;
}

}  // namespace

CliffordTable::CliffordTable() {
    const Eigen::Matrix4d gens[2] = {hadamard_ptm(), phase_ptm()};
    elements_.push_back(Eigen::Matrix4d::Identity());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (const auto &g : gens) {
            Eigen::Matrix4d next = g * elements_[i];
            if (find(next) == elements_.size()) {
                elements_.push_back(next);
            }
        }
    }
    if (elements_.size() != 24) {
        throw std::logic_error("Clifford generation did not yield 24 elements");
    }
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        inverse_[i] = find(elements_[i].transpose());
    }
    const std::size_t n = elements_.size();
    product_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            product_[a * n + b] = find(elements_[a] * elements_[b]);
        }
    }
}

const CliffordTable &CliffordTable::instance() {
    static const CliffordTable table;
    return table;
}

std::size_t CliffordTable::find(const Eigen::Matrix4d &m) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if ((elements_[i] - m).cwiseAbs().maxCoeff() < 1e-9) {
            return i;
        }
    }
    return elements_.size();
}

ChannelPtm clifford_twirl(const ChannelPtm &channel) {
    const auto &table = CliffordTable::instance();
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    for (std::size_t i = 0; i < table.size(); ++i) {
        acc += table[i].transpose() * channel.matrix * table[i];
    }
    return ChannelPtm{acc / static_cast<double>(table.size())};
}

}  // namespace bequp
