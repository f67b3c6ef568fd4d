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

#include "ciftem/codec.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ciftem/encoder.hpp"
#include "ciftem/error.hpp"
#include "ciftem/signal.hpp"

namespace ciftem {
namespace {

FiringSequence Synthetic(std::vector<double> intervals) {
  FiringSequence fs;
  fs.t0 = 0.25;
  fs.intervals = std::move(intervals);
  fs.params = TemParams::FixedBias(35, 0.5, 0.075);
  return fs;
}

struct Encoded {
  FiringSequence firings;
  TimeBounds bounds;
};

Encoded DefaultFirings(double hz, std::uint64_t seed, bool alpha_mode) {
  const double omega = OmegaFromHz(hz);
  const BandlimitedSignal s = Generate(omega, 0.8, 12.0 * kPi / omega, seed);
  const double c = s.spec().amplitude_bound;
  const TemParams p = alpha_mode ? TemParams::FromAlpha(6, c, 0.5, 0.075)
                                 : TemParams::FixedBias(35, 0.5, 0.075);
  return {Encode(s, p, 0.0, s.duration()), ComputeTimeBounds(p, c)};
}

TEST(Codec, HandBuiltStreamDecodes) {
  CompressedStream cs;
  cs.header.scheme = Scheme::kCcif;
  cs.header.levels = 8;
  cs.header.windows = 4;
  cs.header.bounds = {1.0, 1.8};  // W = 0.2, W / K = 0.025
  cs.records = {{1, 3}, {std::nullopt, 0}, {3, 7}};
  const DecodedStream d = DecodeStream(cs);
  ASSERT_EQ(d.intervals.size(), 3U);
  EXPECT_NEAR(d.intervals[0], 1.2875, 1e-15);
  EXPECT_NEAR(d.intervals[1], 1.2125, 1e-15);
  EXPECT_NEAR(d.intervals[2], 1.7875, 1e-15);
  EXPECT_EQ(d.window_counts, (std::vector<std::uint32_t>{4, 4, 4}));
}

TEST(Codec, WindowEmissionsOnlyOnChange) {
  // Window sequence 0 0 1 1 1 3 3 2 2 0: four changes.
  const FiringSequence fs =
      Synthetic({1.1, 1.2, 1.3, 1.4, 1.45, 1.9, 1.8, 1.6, 1.55, 1.05});
  const CompressedStream cs = CcifEncode(fs, 4, 16, {1.0, 2.0});
  EXPECT_EQ(cs.window_events(), 5U);
  EXPECT_TRUE(cs.records.front().window.has_value());
  std::vector<std::uint32_t> emitted;
  for (const Record& r : cs.records) {
    if (r.window) emitted.push_back(*r.window);
  }
  EXPECT_EQ(emitted, (std::vector<std::uint32_t>{0, 1, 3, 2, 0}));
}

TEST(Codec, SingleWindowStreamHasOneEmission) {
  const FiringSequence fs = Synthetic({1.01, 1.02, 1.05, 1.07, 1.03});
  const CompressedStream cs = CcifEncode(fs, 4, 64, {1.0, 2.0});
  EXPECT_EQ(cs.window_events(), 1U);
  EXPECT_EQ(cs.records.size(), 5U);
}

TEST(Codec, EmptySequenceKeepsHeader) {
  const CompressedStream cs = CcifEncode(Synthetic({}), 3, 64, {1.0, 2.0});
  EXPECT_TRUE(cs.records.empty());
  EXPECT_EQ(cs.header.windows, 3U);
  EXPECT_EQ(cs.header.t0, 0.25);
  EXPECT_TRUE(DecodeStream(cs).intervals.empty());
  EXPECT_EQ(BitCost(cs, Accounting::kCompact).total_bits, 0U);
}

TEST(Codec, SingleWindowMatchesUniform) {
  const Encoded e = DefaultFirings(80, 3, false);
  const QuantizerConfig q{256, e.bounds};
  const DecodedStream ccif = DecodeStream(CcifEncode(e.firings, 1, 256, e.bounds));
  const DecodedStream uni = DecodeStream(UniformEncode(e.firings, 256, e.bounds));
  ASSERT_EQ(ccif.intervals.size(), e.firings.intervals.size());
  for (std::size_t i = 0; i < ccif.intervals.size(); ++i) {
    EXPECT_EQ(ccif.intervals[i], uni.intervals[i]);
    EXPECT_EQ(ccif.intervals[i], UniformQuantize(e.firings.intervals[i], q).value);
  }
}

TEST(Codec, RoundTripWithinHalfStep) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Encoded e = DefaultFirings(seed % 2 ? 80 : 20, seed, seed % 3 == 0);
    const auto& t = e.firings.intervals;
    for (std::uint32_t bits : {6U, 10U, 15U}) {
      const std::uint64_t k = std::uint64_t{1} << bits;
      for (std::uint32_t l : {1U, 3U, 4U, 8U}) {
        const DecodedStream d = DecodeStream(CcifEncode(e.firings, l, k, e.bounds));
        const double half = 0.5 * EffectiveStep(e.bounds, l, k);
        for (std::size_t i = 0; i < t.size(); ++i) {
          EXPECT_LE(std::abs(d.intervals[i] - t[i]), half * (1 + 1e-9));
        }
      }
      std::vector<std::uint32_t> enc_counts;
      const CompressedStream cs =
          DcifEncode(e.firings, k, EstimatorParams{}, e.bounds, &enc_counts);
      const DecodedStream d = DecodeStream(cs);
      EXPECT_EQ(d.window_counts, enc_counts);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double half = 0.5 * EffectiveStep(e.bounds, d.window_counts[i], k);
        EXPECT_LE(std::abs(d.intervals[i] - t[i]), half * (1 + 1e-9));
      }
    }
  }
}

TEST(Codec, StepDominance) {
  const TimeBounds b{1e-3, 1.5e-3};
  for (std::uint64_t k : {64ULL, 1024ULL, 32768ULL}) {
    const double base = EffectiveStep(b, 1, k);
    EXPECT_NEAR(base, b.range() / static_cast<double>(k), 1e-12 * base);
    for (std::uint32_t l = 2; l <= 64; ++l) {
      const double s = EffectiveStep(b, l, k);
      EXPECT_LT(s, base);
      EXPECT_NEAR(l * s, base, 1e-12 * base);
    }
  }
}

TEST(Dcif, ConstantIntervalsDriveWindowCountToCap) {
  const FiringSequence fs = Synthetic(std::vector<double>(120, 1.3));
  std::vector<std::uint32_t> counts;
  const EstimatorParams est{};
  DcifEncode(fs, 64, est, {1.0, 2.0}, &counts);
  ASSERT_EQ(counts.size(), 120U);
  for (std::size_t n = 0; n < 40; ++n) EXPECT_EQ(counts[n], est.initial_windows);
  for (std::size_t n = 40; n < 120; ++n) EXPECT_EQ(counts[n], est.max_windows);
}

TEST(Dcif, UpdatesOnlyOnCadence) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  std::vector<double> t(200);
  for (std::size_t i = 0; i < 100; ++i) t[i] = u(rng);
  for (std::size_t i = 100; i < 200; ++i) t[i] = 1.5 + 0.01 * u(rng);
  std::vector<std::uint32_t> counts;
  EstimatorParams est;
  est.window_length = 20;
  est.update_every = 7;
  DcifEncode(Synthetic(t), 32, est, {1.0, 2.0}, &counts);
  for (std::size_t n = 1; n < counts.size(); ++n) {
    if (counts[n] != counts[n - 1]) {
      EXPECT_GE(n, 20U);
      EXPECT_EQ((n - 20) % 7, 0U) << n;
    }
  }
  EXPECT_GT(counts.back(), counts.front());
}

TEST(Dcif, EmitsWindowAfterEveryCountChange) {
  const Encoded e = DefaultFirings(80, 8, true);
  std::vector<std::uint32_t> counts;
  const CompressedStream cs =
      DcifEncode(e.firings, 256, EstimatorParams{}, e.bounds, &counts);
  ASSERT_TRUE(cs.records[0].window.has_value());
  for (std::size_t n = 1; n < counts.size(); ++n) {
    if (counts[n] != counts[n - 1]) {
      EXPECT_TRUE(cs.records[n].window.has_value());
    }
  }
}

TEST(Dcif, DeterministicAndDefaultRange) {
  double total = 0.0;
  int streams = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Encoded e = DefaultFirings(80, seed, false);
    const CompressedStream a = DcifEncode(e.firings, 1024, EstimatorParams{}, e.bounds);
    const CompressedStream b = DcifEncode(e.firings, 1024, EstimatorParams{}, e.bounds);
    EXPECT_EQ(a, b);
    const auto counts = DecodeStream(a).window_counts;
    double avg = 0.0;
    for (auto c : counts) avg += c;
    total += avg / counts.size();
    ++streams;
  }
  const double mean = total / streams;
  EXPECT_GE(mean, 2.0);
  EXPECT_LE(mean, 8.0);
}

TEST(Dcif, EstimatorVarianceRespectsPopoviciu) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Encoded e = DefaultFirings(seed % 2 ? 40 : 80, seed, seed % 3 == 1);
    const auto& t = e.firings.intervals;
    const double cap = std::pow(e.bounds.range() / 2, 2);
    for (std::size_t end = 40; end <= t.size(); ++end) {
      const RunningStats s =
          ComputeRunningStats(std::span<const double>(t).subspan(end - 40, 40));
      EXPECT_LT(s.variance, cap);
    }
  }
}

TEST(Codec, MalformedStreamsAreRejected) {
  CompressedStream cs;
  cs.header.scheme = Scheme::kCcif;
  cs.header.levels = 8;
  cs.header.windows = 4;
  cs.header.bounds = {1.0, 1.8};
  auto code_of = [](const CompressedStream& s) {
    try {
      DecodeStream(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternalConsistency;
  };
  cs.records = {{std::nullopt, 1}};
  EXPECT_EQ(code_of(cs), ErrorCode::kMalformedStream);
  cs.records = {{4, 1}};
  EXPECT_EQ(code_of(cs), ErrorCode::kMalformedStream);
  cs.records = {{0, 8}};
  EXPECT_EQ(code_of(cs), ErrorCode::kMalformedStream);
  cs.records = {{0, 7}};
  EXPECT_NO_THROW(DecodeStream(cs));
}

CompressedStream HundredRecords(std::uint32_t windows, int changes) {
  CompressedStream cs;
  cs.header.scheme = windows == 1 ? Scheme::kUniform : Scheme::kCcif;
  cs.header.levels = 256;
  cs.header.windows = windows;
  cs.header.bounds = {1.0, 2.0};
  cs.records.resize(100);
  cs.records[0].window = 0;
  for (int i = 1; i <= changes; ++i) cs.records[i * 10].window = i % 2;
  return cs;
}

TEST(BitCost, DefinitionExamples) {
  const BitReport flat = BitCost(HundredRecords(1, 0), Accounting::kCompact);
  EXPECT_EQ(flat.total_bits, 800U);
  EXPECT_EQ(flat.overhead_percent, 0.0);

  const CompressedStream cs = HundredRecords(8, 4);
  const BitReport compact = BitCost(cs, Accounting::kCompact);
  EXPECT_EQ(compact.residual_bits, 800U);
  EXPECT_EQ(compact.window_bits, 15U);
  EXPECT_EQ(compact.flag_bits, 0U);
  EXPECT_EQ(compact.total_bits, 815U);
  EXPECT_DOUBLE_EQ(compact.overhead_percent, 100.0 * 15 / 800);

  const BitReport framed = BitCost(cs, Accounting::kSelfDelimiting);
  EXPECT_EQ(framed.flag_bits, 100U);
  EXPECT_EQ(framed.total_bits, 915U);
  EXPECT_DOUBLE_EQ(framed.overhead_percent, 100.0 * 115 / 800);
}

TEST(BitCost, DcifUsesWindowCountInForce) {
  const Encoded e = DefaultFirings(80, 2, false);
  std::vector<std::uint32_t> counts;
  const CompressedStream cs =
      DcifEncode(e.firings, 512, EstimatorParams{}, e.bounds, &counts);
  std::uint64_t expected = 0;
  for (std::size_t i = 0; i < cs.records.size(); ++i) {
    if (cs.records[i].window) expected += CeilLog2(counts[i]);
  }
  const BitReport r = BitCost(cs, Accounting::kCompact);
  EXPECT_EQ(r.window_bits, expected);
  EXPECT_EQ(r.residual_bits, 9U * cs.records.size());
}

TEST(Codec, SchemeNames) {
  EXPECT_EQ(ToString(Scheme::kUniform), "iftem");
  EXPECT_EQ(ParseScheme("ccif"), Scheme::kCcif);
  EXPECT_EQ(ParseScheme("uniform"), Scheme::kUniform);
  EXPECT_EQ(ParseAccounting("self-delimiting"), Accounting::kSelfDelimiting);
  EXPECT_THROW(ParseScheme("bogus"), Error);
  EstimatorParams bad;
  bad.window_length = 1;
  EXPECT_THROW(bad.Validate(), Error);
}

}  // namespace
}  // namespace ciftem
