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

// Behavioral model of the counter-based compressor: a free-running counter
// clocked at f_clk measures each interval; its low bits are the residual and
// its high bits the window number, which is recorded only when it changes.

#include <cstdint>
#include <span>
#include <vector>

#include "ciftem/codec.hpp"

namespace ciftem {

struct CounterConfig {
  double clock_hz = 0.0;
  unsigned residual_bits = 0;
  unsigned window_bits = 0;  // counter width = residual_bits + window_bits
};

struct CounterCode {
  std::uint64_t window = 0;
  std::uint64_t residual = 0;

  bool operator==(const CounterCode&) const = default;
};

/// ticks = floor(T * f_clk); residual = low bits, window = high bits.
/// Throws kCounterOverflow if ticks do not fit the counter width.
CounterCode CounterEncode(double interval, const CounterConfig& config);

std::uint64_t CounterTicks(const CounterCode& code, const CounterConfig& config);

/// Center of the tick cell: (ticks + 0.5) / f_clk.
double CounterDecode(const CounterCode& code, const CounterConfig& config);

struct CounterStream {
  CounterConfig config;
  std::vector<CounterCode> codes;
  std::vector<bool> window_emitted;
  BitReport bits;
};

CounterStream CounterEncodeSequence(std::span<const double> intervals,
                                    const CounterConfig& config);

}  // namespace ciftem
