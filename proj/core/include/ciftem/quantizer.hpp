// Copyright 2026 The ciftem Authors
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

#pragma once

// Scalar quantization of inter-firing intervals: the K-level midrise
// quantizer over the whole dynamic range, the partition of that range into L
// equal windows, and the running statistics that choose L.

#include <cstdint>
#include <span>

#include "ciftem/params.hpp"

namespace ciftem {

struct QuantizerConfig {
  std::uint64_t levels = 1;
  TimeBounds bounds;

  double step() const { return bounds.range() / static_cast<double>(levels); }
};

struct Quantized {
  std::uint64_t code = 0;
  double value = 0.0;
};

/// Midrise: code = clamp(floor((T - dt_min)/step), 0, K-1), reconstruction at
/// the cell center. Out-of-range inputs land in the edge cells.
Quantized UniformQuantize(double interval, const QuantizerConfig& config);
double UniformDequantize(std::uint64_t code, const QuantizerConfig& config);

/// L equal windows tiling [dt_min, dt_max].
struct WindowPartition {
  std::uint32_t count = 1;
  TimeBounds bounds;

  double width() const { return bounds.range() / static_cast<double>(count); }
  double lower_edge(std::uint32_t window) const {
    return bounds.dt_min + window * width();
  }
  std::uint32_t WindowOf(double interval) const;
};

/// Window index plus K-level midrise residual inside that window.
struct WindowedCode {
  std::uint32_t window = 0;
  std::uint64_t residual = 0;
};

WindowedCode WindowedQuantize(double interval, const WindowPartition& windows,
                              std::uint64_t levels);
double WindowedDequantize(const WindowedCode& code,
                          const WindowPartition& windows,
                          std::uint64_t levels);

/// ceil(range / (2 sqrt(variance))) clamped to [1, max_windows];
/// variance == 0 gives max_windows.
std::uint32_t ConstWindowCount(double variance, const TimeBounds& bounds,
                               std::uint32_t max_windows);

struct RunningStats {
  double mean = 0.0;
  double variance = 0.0;  // population form, 1/m normalization
};

/// Mean and population variance of the buffer (Welford). Requires m > 1.
RunningStats ComputeRunningStats(std::span<const double> buffer);

}  // namespace ciftem
