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

#include "ciftem/counter.hpp"

#include <cmath>
#include <string>

#include "ciftem/error.hpp"

namespace ciftem {
namespace {

void ValidateCounter(const CounterConfig& config) {
  Require(std::isfinite(config.clock_hz) && config.clock_hz > 0.0,
          ErrorCode::kInvalidArgument, "counter clock must be positive");
  Require(config.residual_bits + config.window_bits <= 63,
          ErrorCode::kInvalidArgument, "counter wider than 63 bits");
}

}  // namespace

CounterCode CounterEncode(double interval, const CounterConfig& config) {
  ValidateCounter(config);
  Require(interval >= 0.0, ErrorCode::kInvalidArgument,
          "interval must be non-negative");
  const unsigned width = config.residual_bits + config.window_bits;
  const double ticks = std::floor(interval * config.clock_hz);
  if (ticks >= std::ldexp(1.0, static_cast<int>(width))) {
    Fail(ErrorCode::kCounterOverflow,
         std::to_string(ticks) + " ticks exceed a " + std::to_string(width) +
             "-bit counter");
  }
  const auto count = static_cast<std::uint64_t>(ticks);
  const std::uint64_t mask = (std::uint64_t{1} << config.residual_bits) - 1;
  return CounterCode{count >> config.residual_bits, count & mask};
}

std::uint64_t CounterTicks(const CounterCode& code, const CounterConfig& config) {
  return (code.window << config.residual_bits) | code.residual;
}

double CounterDecode(const CounterCode& code, const CounterConfig& config) {
  ValidateCounter(config);
  return (static_cast<double>(CounterTicks(code, config)) + 0.5) / config.clock_hz;
}

CounterStream CounterEncodeSequence(std::span<const double> intervals,
                                    const CounterConfig& config) {
  CounterStream out;
  out.config = config;
  out.codes.reserve(intervals.size());
  out.window_emitted.reserve(intervals.size());
  for (std::size_t n = 0; n < intervals.size(); ++n) {
    const CounterCode code = CounterEncode(intervals[n], config);
    const bool emit = n == 0 || code.window != out.codes.back().window;
    out.codes.push_back(code);
    out.window_emitted.push_back(emit);
    out.bits.residual_bits += config.residual_bits;
    if (emit) out.bits.window_bits += config.window_bits;
  }
  out.bits.total_bits = out.bits.residual_bits + out.bits.window_bits;
  out.bits.overhead_percent =
      out.bits.residual_bits == 0
          ? 0.0
          : 100.0 * static_cast<double>(out.bits.window_bits) /
                static_cast<double>(out.bits.residual_bits);
  return out;
}

}  // namespace ciftem
