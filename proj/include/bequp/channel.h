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

#ifndef BEQUP_CHANNEL_H_
#define BEQUP_CHANNEL_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bequp {

/// Single-qubit channel as a 4x4 Pauli transfer matrix acting on (I, X, Y, Z)
/// coefficient vectors. Row 0 is (1, 0, 0, 0) for trace-preserving maps.
struct ChannelPtm {
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();

    static ChannelPtm identity() { return {}; }

    /// 3x3 block acting on the Bloch vector.
    Eigen::Matrix3d unital_block() const { return matrix.block<3, 3>(1, 1); }
    /// Bloch-vector offset; nonzero only for non-unital maps.
    Eigen::Vector3d translation() const { return matrix.block<3, 1>(1, 0); }
    bool is_trace_preserving(double tol = 1e-12) const;
};

enum class NoiseKind { kDepolarizing, kDephasing, kAmplitudeDamping, kBitFlip };

inline constexpr std::array<NoiseKind, 4> kAllNoiseKinds = {
    NoiseKind::kDepolarizing, NoiseKind::kDephasing, NoiseKind::kAmplitudeDamping, NoiseKind::kBitFlip};

/// "depolarizing", "dephasing", "amplitude_damping", "bit_flip".
std::string_view noise_kind_name(NoiseKind kind);
/// Inverse of noise_kind_name; also accepts '-' for '_'. Throws std::invalid_argument.
NoiseKind parse_noise_kind(std::string_view name);

/// strength is gamma for amplitude damping and an error probability otherwise.
struct NoiseModel {
    NoiseKind kind = NoiseKind::kDepolarizing;
    double strength = 0.0;
};

/// Throws std::invalid_argument when strength is outside [0, 1].
ChannelPtm ptm_of(const NoiseModel &model);

/// trace(unital block) / 3: the depolarizing parameter of the twirled channel.
double effective_depolarizing(const ChannelPtm &channel);

/// Average fidelity over pure input states: 1/2 + trace(unital block) / 6.
double average_fidelity(const ChannelPtm &channel);

/// Strength reaching average fidelity f. Throws std::invalid_argument when f is
/// outside the model's reachable range: [1/2, 1] for depolarizing and
/// amplitude damping, [1/3, 1] for dephasing and bit flip.
NoiseModel strength_from_fidelity(NoiseKind kind, double f);

/// Apply a, then b.
ChannelPtm compose(const ChannelPtm &a, const ChannelPtm &b);

/// The 24 single-qubit Cliffords as PTMs, generated from H and S.
class CliffordTable {
   public:
    static const CliffordTable &instance();

    std::size_t size() const { return elements_.size(); }
    const Eigen::Matrix4d &operator[](std::size_t i) const { return elements_[i]; }
    std::size_t inverse_index(std::size_t i) const { return inverse_[i]; }
    /// Index of elements[a] * elements[b] (apply b, then a).
    std::size_t product(std::size_t a, std::size_t b) const { return product_[a * elements_.size() + b]; }
    /// Index of the element equal to m, or size() if none.
    std::size_t find(const Eigen::Matrix4d &m) const;

   private:
    CliffordTable();
    std::vector<Eigen::Matrix4d> elements_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> product_;
};

/// Average of C^T R C over the Clifford table.
ChannelPtm clifford_twirl(const ChannelPtm &channel);

}  // namespace bequp

#endif  // BEQUP_CHANNEL_H_
