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

#include "ciftem/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "ciftem/error.hpp"

namespace ciftem {
namespace {

std::uint64_t ClampedCell(double offset, double step, std::uint64_t cells) {
  const double raw = std::floor(offset / step);
  if (!(raw > 0.0)) return 0;  // also catches NaN
  const double top = static_cast<double>(cells - 1);
  if (raw >= top) return cells - 1;
  return static_cast<std::uint64_t>(raw);
}

}  // namespace

Quantized UniformQuantize(double interval, const QuantizerConfig& config) {
  const double step = config.step();
  const std::uint64_t code =
      ClampedCell(interval - config.bounds.dt_min, step, config.levels);
  return Quantized{code, UniformDequantize(code, config)};
}

double UniformDequantize(std::uint64_t code, const QuantizerConfig& config) {
  return config.bounds.dt_min + (static_cast<double>(code) + 0.5) * config.step();
}

std::uint32_t WindowPartition::WindowOf(double interval) const {
  return static_cast<std::uint32_t>(
      ClampedCell(interval - bounds.dt_min, width(), count));
}

WindowedCode WindowedQuantize(double interval, const WindowPartition& windows,
                              std::uint64_t levels) {
  WindowedCode code;
  code.window = windows.WindowOf(interval);
  const double step = windows.width() / static_cast<double>(levels);
  code.residual =
      ClampedCell(interval - windows.lower_edge(code.window), step, levels);
  return code;
}

double WindowedDequantize(const WindowedCode& code,
                          const WindowPartition& windows,
                          std::uint64_t levels) {
  const double step = windows.width() / static_cast<double>(levels);
  return windows.lower_edge(code.window) +
         (static_cast<double>(code.residual) + 0.5) * step;
}

std::uint32_t ConstWindowCount(double variance, const TimeBounds& bounds,
                               std::uint32_t max_windows) {
  Require(variance >= 0.0, ErrorCode::kInvalidArgument,
          "variance must be non-negative");
  Require(max_windows >= 1, ErrorCode::kInvalidArgument,
          "maximum window count must be at least 1");
  if (variance == 0.0) return max_windows;
  if (4.0 * variance >= bounds.range() * bounds.range()) return 1;
  const double raw = std::ceil(bounds.range() / (2.0 * std::sqrt(variance)));
  if (!(raw > 1.0)) return 1;
  if (raw >= static_cast<double>(max_windows)) return max_windows;
  return static_cast<std::uint32_t>(raw);
}

RunningStats ComputeRunningStats(std::span<const double> buffer) {
  Require(buffer.size() > 1, ErrorCode::kInvalidArgument,
          "running statistics need more than one sample");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double v : buffer) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  return RunningStats{mean, m2 / static_cast<double>(n)};
}

}  // namespace ciftem
