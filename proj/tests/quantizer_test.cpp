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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ciftem/error.hpp"

namespace ciftem {
namespace {

const TimeBounds kBounds{0.0375 / 28.0, 0.0375 / 20.0};

TEST(UniformQuantize, Edges) {
  const QuantizerConfig q{64, kBounds};
  const Quantized lo = UniformQuantize(kBounds.dt_min, q);
  EXPECT_EQ(lo.code, 0U);
  EXPECT_DOUBLE_EQ(lo.value, kBounds.dt_min + 0.5 * q.step());
  EXPECT_EQ(UniformQuantize(kBounds.dt_max, q).code, 63U);
  EXPECT_EQ(UniformQuantize(kBounds.dt_max * 2, q).code, 63U);
  EXPECT_EQ(UniformQuantize(0.0, q).code, 0U);
}

TEST(UniformQuantize, HandExample) {
  const QuantizerConfig q{64, kBounds};
  EXPECT_NEAR(q.step(), 8.3705e-6, 5e-10);
  const Quantized r = UniformQuantize(1.6e-3, q);
  EXPECT_EQ(r.code, 31U);
  EXPECT_NEAR(r.value, 1.6030e-3, 5e-8);
  EXPECT_DOUBLE_EQ(r.value, UniformDequantize(31, q));
}

TEST(UniformQuantize, HalfStepBound) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(kBounds.dt_min, kBounds.dt_max);
  for (std::uint64_t k : {1ULL, 2ULL, 64ULL, 1024ULL, 32768ULL}) {
    const QuantizerConfig q{k, kBounds};
    for (int i = 0; i < 2000; ++i) {
      const double t = u(rng);
      const Quantized r = UniformQuantize(t, q);
      EXPECT_LT(r.code, k);
      EXPECT_LE(std::abs(r.value - t), 0.5 * q.step() * (1 + 1e-12));
    }
  }
}

TEST(WindowPartition, TilesRange) {
  const WindowPartition w{5, kBounds};
  EXPECT_DOUBLE_EQ(w.lower_edge(0), kBounds.dt_min);
  EXPECT_NEAR(w.lower_edge(4) + w.width(), kBounds.dt_max, 1e-18);
  EXPECT_EQ(w.WindowOf(kBounds.dt_min), 0U);
  EXPECT_EQ(w.WindowOf(kBounds.dt_max), 4U);
  EXPECT_EQ(w.WindowOf(w.lower_edge(2) + 0.5 * w.width()), 2U);
  EXPECT_EQ(w.WindowOf(-1.0), 0U);
  EXPECT_EQ(w.WindowOf(1.0), 4U);
}

TEST(WindowedQuantize, StepAndRoundTrip) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(kBounds.dt_min, kBounds.dt_max);
  for (std::uint32_t l : {1U, 2U, 3U, 4U, 8U, 64U}) {
    const WindowPartition w{l, kBounds};
    const std::uint64_t k = 64;
    for (int i = 0; i < 1000; ++i) {
      const double t = u(rng);
      const WindowedCode c = WindowedQuantize(t, w, k);
      EXPECT_LT(c.window, l);
      EXPECT_LT(c.residual, k);
      const double back = WindowedDequantize(c, w, k);
      EXPECT_LE(std::abs(back - t), 0.5 * w.width() / k * (1 + 1e-9));
    }
  }
}

TEST(WindowedQuantize, ReducedLevelsStepEquivalence) {
  // K' = K / L levels in L windows has the step of K uniform levels.
  const std::uint64_t k = 256;
  for (std::uint32_t l : {1U, 2U, 4U, 8U, 16U}) {
    const WindowPartition w{l, kBounds};
    const QuantizerConfig q{k, kBounds};
    EXPECT_NEAR(w.width() / static_cast<double>(k / l), q.step(), 1e-12 * q.step());
  }
}

TEST(ConstWindowCount, Examples) {
  const TimeBounds b{1.0, 1.0 + 5.357e-4};
  EXPECT_EQ(ConstWindowCount(1e-8, b, 64), 3U);
  const double popoviciu = std::pow(b.range() / 2, 2);
  EXPECT_EQ(ConstWindowCount(popoviciu, b, 64), 1U);
  EXPECT_EQ(ConstWindowCount(4 * popoviciu, b, 64), 1U);
  EXPECT_EQ(ConstWindowCount(0.0, b, 64), 64U);
  EXPECT_EQ(ConstWindowCount(1e-20, b, 64), 64U);
  EXPECT_EQ(ConstWindowCount(1e-20, b, 8), 8U);
  EXPECT_THROW(ConstWindowCount(-1.0, b, 64), Error);
}

TEST(RunningStats, SmallCases) {
  const std::vector<double> flat(10, 2.5e-3);
  const RunningStats a = ComputeRunningStats(flat);
  EXPECT_DOUBLE_EQ(a.mean, 2.5e-3);
  EXPECT_EQ(a.variance, 0.0);
  const std::vector<double> two{1.0e-3, 1.4e-3};
  const RunningStats b = ComputeRunningStats(two);
  EXPECT_DOUBLE_EQ(b.mean, 1.2e-3);
  EXPECT_NEAR(b.variance, 0.04e-6, 1e-20);
  EXPECT_THROW(ComputeRunningStats(std::vector<double>{1.0}), Error);
  EXPECT_THROW(ComputeRunningStats(std::vector<double>{}), Error);
}

TEST(RunningStats, MatchesTwoPassOracle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(kBounds.dt_min, kBounds.dt_max);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> buf(40);
    for (double& v : buf) v = u(rng);
    double mean = 0.0;
    for (double v : buf) mean += v;
    mean /= buf.size();
    double var = 0.0;
    for (double v : buf) var += (v - mean) * (v - mean);
    var /= buf.size();
    const RunningStats s = ComputeRunningStats(buf);
    EXPECT_NEAR(s.mean, mean, 1e-12 * mean);
    EXPECT_NEAR(s.variance, var, 1e-12 * var);
    // Popoviciu: a bounded sample cannot exceed (range / 2)^2.
    EXPECT_LT(s.variance, std::pow(kBounds.range() / 2, 2));
  }
}

}  // namespace
}  // namespace ciftem
