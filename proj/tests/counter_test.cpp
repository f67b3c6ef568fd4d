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
#include <random>

#include <gtest/gtest.h>

#include "ciftem/error.hpp"

namespace ciftem {
namespace {

TEST(Counter, SplitsHighAndLowBits) {
  const CounterConfig cfg{1.0, 4, 4};
  EXPECT_EQ(CounterEncode(37.0, cfg), (CounterCode{2, 5}));
  EXPECT_EQ(CounterEncode(37.9, cfg), (CounterCode{2, 5}));
  EXPECT_EQ(CounterEncode(0.0, cfg), (CounterCode{0, 0}));
  EXPECT_EQ(CounterTicks(CounterCode{2, 5}, cfg), 37U);
  EXPECT_DOUBLE_EQ(CounterDecode(CounterCode{2, 5}, cfg), 37.5);
}

TEST(Counter, BruteForceIdentity) {
  const CounterConfig cfg{2.5e6, 7, 5};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 4095.0 / cfg.clock_hz);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const CounterCode c = CounterEncode(t, cfg);
    const auto ticks = static_cast<std::uint64_t>(std::floor(t * cfg.clock_hz));
    EXPECT_EQ(c.window * 128 + c.residual, ticks);
    EXPECT_LT(c.residual, 128U);
    EXPECT_EQ(CounterTicks(c, cfg), ticks);
    EXPECT_LE(std::abs(CounterDecode(c, cfg) - t), 0.5 / cfg.clock_hz + 1e-15);
  }
}

TEST(Counter, OverflowAndBadInput) {
  const CounterConfig cfg{1.0, 3, 2};
  EXPECT_NO_THROW(CounterEncode(31.9, cfg));
  try {
    CounterEncode(32.0, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCounterOverflow);
  }
  EXPECT_THROW(CounterEncode(-1.0, cfg), Error);
  EXPECT_THROW(CounterEncode(1.0, CounterConfig{0.0, 3, 2}), Error);
}

TEST(Counter, SequenceEmitsOnWindowChange) {
  const CounterConfig cfg{1.0, 4, 3};
  const std::vector<double> t{17, 20, 31, 33, 34, 50, 18};
  const CounterStream s = CounterEncodeSequence(t, cfg);
  EXPECT_EQ(s.window_emitted,
            (std::vector<bool>{true, false, false, true, false, true, true}));
  EXPECT_EQ(s.bits.residual_bits, 28U);
  EXPECT_EQ(s.bits.window_bits, 12U);
  EXPECT_EQ(s.bits.total_bits, 40U);
}

}  // namespace
}  // namespace ciftem
