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

#ifndef BEQUP_CALIBRATION_H_
#define BEQUP_CALIBRATION_H_

#include <cstdint>
#include <vector>

#include "bequp/benchmarking.h"
#include "bequp/channel.h"
#include "bequp/network_model.h"

namespace bequp {

/// Concentration constant C: |mean of N Bench estimates - p| stays below
/// sqrt(C ln(1/delta) / N) with probability 1 - delta. Produced by
/// calibrate_radius_constant with its default grid at T0 = 10, per mode.
inline constexpr double kDefaultRadiusC = 0.000925;
inline constexpr double kDefaultRadiusCPtm = 0.0284;

/// LinkEst constant C0, produced by calibrate_c0 with its default settings.
inline constexpr double kDefaultC0 = 0.0154;
// Pauli readout leaves weak-path estimates biased by more than the usual
// tolerance at T0 = 10, so no C0 reaches the coverage target in PTM mode.
// The surrogate value is scaled by the ratio of the radius constants.
inline constexpr double kDefaultC0Ptm = kDefaultC0 * kDefaultRadiusCPtm / kDefaultRadiusC;

inline double default_radius_c(BenchMode mode) {
    return mode == BenchMode::kPtm ? kDefaultRadiusCPtm : kDefaultRadiusC;
}

inline double default_c0(BenchMode mode) {
    return mode == BenchMode::kPtm ? kDefaultC0Ptm : kDefaultC0;
}

struct RadiusCalibrationConfig {
    std::vector<double> p_values = {0.98, 0.95, 0.9, 0.8};
    std::vector<int> sample_counts = {1, 4, 16, 64};
    std::vector<double> deltas = {0.2, 0.1, 0.05};
    std::vector<BenchMode> modes = {BenchMode::kSurrogate};
    int runs = 2000;
    BenchConfig bench;
    std::uint64_t seed = 1;
};

struct RadiusCalibrationCell {
    BenchMode mode = BenchMode::kSurrogate;
    double p = 0.0;
    int n = 0;
    double delta = 0.0;
    /// (1 - delta) quantile of |mean - p| divided by sqrt(ln(1/delta) / N).
    double ratio = 0.0;
};

struct RadiusCalibrationResult {
    std::vector<RadiusCalibrationCell> cells;
    /// Largest ratio; C = c_root^2.
    double c_root = 0.0;
    double c = 0.0;
};

RadiusCalibrationResult calibrate_radius_constant(const RadiusCalibrationConfig &cfg);

/// Fraction of runs in which LinkEst with the accuracy-sized N is
/// eps-accurate on every path of the instance.
struct CoverageResult {
    double coverage = 0.0;
    std::uint64_t n = 0;
    int runs = 0;
};

CoverageResult link_est_coverage(const Instance &instance, NoiseKind kind, const BenchConfig &bench, double eps,
                                 double delta, double c0, int runs, std::uint64_t seed);

struct C0CalibrationSetting {
    int n = 3;
    double eps = 0.25;
    double delta = 0.1;
};

struct C0CalibrationConfig {
    // n >= 4 is excluded: its weakest paths hit the clip floor often enough at
    // T0 = 10 that the log-domain bias alone exceeds eps = 0.25.
    std::vector<C0CalibrationSetting> settings = {{2, 0.25, 0.1}, {3, 0.5, 0.1}, {3, 0.25, 0.1}, {3, 0.25, 0.05}};
    std::vector<NoiseKind> noise = {NoiseKind::kDepolarizing};
    /// Coverage each setting must reach: 1 - delta * target_scale.
    double target_scale = 0.5;
    int runs = 400;
    BenchConfig bench;
    std::uint64_t seed = 7;
    double start = 1e-3;
    double growth = 1.2;
    /// The search fails with std::runtime_error past this value.
    double stop = 10.0;
};

struct C0CalibrationResult {
    double c0 = 0.0;
    std::vector<CoverageResult> coverage;
};

/// Smallest C0 on the geometric grid start * growth^i at which every setting
/// reaches its coverage target. Throws std::runtime_error if none up to stop does.
C0CalibrationResult calibrate_c0(const C0CalibrationConfig &cfg);

}  // namespace bequp

#endif  // BEQUP_CALIBRATION_H_
