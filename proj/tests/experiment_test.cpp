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

#include "ciftem/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ciftem/error.hpp"

namespace ciftem::bench {
namespace {

TrialConfig Base(Scheme scheme, std::uint32_t bits, std::uint64_t seed) {
  TrialConfig c;
  c.scheme = scheme;
  c.bits = bits;
  c.seed = seed;
  return c;
}

TEST(RunTrial, Deterministic) {
  for (Scheme s : {Scheme::kUniform, Scheme::kCcif, Scheme::kDcif}) {
    const TrialConfig c = Base(s, 9, 5);
    EXPECT_EQ(RunTrial(c), RunTrial(c));
  }
}

TEST(RunTrial, SingleWindowCcifEqualsBaseline) {
  for (std::uint64_t seed : {1, 2, 3}) {
    TrialConfig c = Base(Scheme::kCcif, 8, seed);
    c.forced_windows = 1;
    EXPECT_EQ(RunTrial(c), RunTrial(Base(Scheme::kUniform, 8, seed)));
  }
}

TEST(RunTrial, ReportsConsistentMetrics) {
  const TrialArtifacts a = RunTrialDetailed(Base(Scheme::kDcif, 10, 7));
  const TrialMetrics& m = a.metrics;
  EXPECT_EQ(m.firing_count, a.firings.firing_count());
  EXPECT_EQ(m.residual_bits, 10U * a.firings.intervals.size());
  EXPECT_EQ(m.total_bits, m.residual_bits + m.window_bits);
  EXPECT_EQ(m.flag_bits, 0U);
  EXPECT_NEAR(m.overhead_percent, 100.0 * m.window_bits / m.residual_bits, 1e-12);
  EXPECT_TRUE(m.density_satisfied);
  EXPECT_GT(m.oversampling_factor, 1.0);
  EXPECT_EQ(a.grid.size(), a.truth.size());
  EXPECT_EQ(a.grid.size(), a.reconstruction.values.size());
}

TEST(RunTrial, ErrorsCarryTrialContext) {
  TrialConfig c = Base(Scheme::kCcif, 8, 3);
  c.fixed_bias = 1.0;  // below the amplitude bound
  try {
    RunTrial(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleSampler);
    EXPECT_NE(std::string(e.what()).find("scheme=ccif"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("seed=3"), std::string::npos);
  }
}

TEST(RunTrial, MseNonincreasingInBits) {
  for (Scheme s : {Scheme::kUniform, Scheme::kCcif, Scheme::kDcif}) {
    for (std::uint64_t seed : {0, 1}) {
      double prev = 1e9;
      for (std::uint32_t bits = 6; bits <= 15; ++bits) {
        const double mse = RunTrial(Base(s, bits, seed)).mse_db;
        EXPECT_LE(mse, prev + 0.5) << ToString(s) << " seed " << seed << " bits " << bits;
        prev = mse;
      }
    }
  }
}

TEST(RunTrial, CcifBeatsBaselineAtEqualLevels) {
  int wins = 0, total = 0;
  for (BiasMode mode : {BiasMode::kFixed, BiasMode::kAlpha}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      TrialConfig c = Base(Scheme::kCcif, 8, seed);
      c.bias_mode = mode;
      TrialConfig u = c;
      u.scheme = Scheme::kUniform;
      wins += RunTrial(c).mse_db <= RunTrial(u).mse_db;
      ++total;
    }
  }
  EXPECT_GE(wins, 0.9 * total);
}

TEST(RunTrial, UnquantizedRecovery) {
  TrialConfig c = Base(Scheme::kUniform, 8, 4);
  c.unquantized = true;
  const TrialMetrics m = RunTrial(c);
  EXPECT_LE(m.mse_db, -40.0);
  EXPECT_EQ(m.total_bits, 0U);
}

TEST(Sweep, SinglePointMatchesRunTrial) {
  SweepGrid g;
  g.bits = {9};
  g.omegas = {OmegaFromHz(80)};
  g.schemes = {Scheme::kDcif};
  g.bias_modes = {BiasMode::kFixed};
  g.seeds = {6};
  const auto rows = Sweep(g, 1);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].kind, RowKind::kTrial);
  TrialConfig c = g.base;
  c.scheme = Scheme::kDcif;
  c.bits = 9;
  c.seed = 6;
  const TrialMetrics m = RunTrial(c);
  EXPECT_EQ(rows[0].mse_db, m.mse_db);
  EXPECT_EQ(rows[0].total_bits, static_cast<double>(m.total_bits));
  EXPECT_EQ(rows[0].avg_windows, m.avg_windows);
  EXPECT_EQ(rows[1].kind, RowKind::kMean);
  EXPECT_EQ(rows[1].mse_db, m.mse_db);
  EXPECT_FALSE(rows[1].seed.has_value());
  EXPECT_EQ(rows[2].kind, RowKind::kStddev);
  EXPECT_EQ(rows[2].mse_db, 0.0);
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
  SweepGrid g;
  g.bits = {7, 11};
  g.omegas = {OmegaFromHz(80), OmegaFromHz(40)};
  g.schemes = {Scheme::kUniform, Scheme::kCcif};
  g.bias_modes = {BiasMode::kAlpha};
  g.seeds = {1, 2, 3};
  EXPECT_EQ(Sweep(g, 1), Sweep(g, 4));
}

TEST(Sweep, FailuresAreRecordedPerRow) {
  SweepGrid g;
  g.base.fixed_bias = 6.0;  // infeasible at 80 Hz (c ~ 8), fine at 5 Hz (c = 2)
  g.bits = {8};
  g.omegas = {OmegaFromHz(80), OmegaFromHz(5)};
  g.schemes = {Scheme::kUniform};
  g.bias_modes = {BiasMode::kFixed};
  g.seeds = {1, 2};
  const auto rows = Sweep(g, 1);
  ASSERT_EQ(rows.size(), 8U);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_TRUE(rows[2].error.empty());
  EXPECT_TRUE(rows[3].error.empty());
  EXPECT_EQ(rows[0].error.find(','), std::string::npos);
  EXPECT_EQ(rows[4].error, "all trials failed");
  EXPECT_TRUE(rows[6].error.empty());
  EXPECT_THROW(Sweep(SweepGrid{}), Error);
}

class SweepCsvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "ciftem_sweep_csv";
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::vector<std::string> Lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }
  std::filesystem::path dir_;
};

TEST_F(SweepCsvTest, EmptyRowsWriteHeaderOnly) {
  WriteSweepCsv(dir_ / "e.csv", {});
  const auto lines = Lines(dir_ / "e.csv");
  ASSERT_EQ(lines.size(), 1U);
  EXPECT_EQ(lines[0],
            "kind,scheme,bias_mode,omega_hz,bits,seed,mse_db,total_bits,"
            "residual_bits,window_bits,flag_bits,overhead_percent,avg_windows,"
            "firing_count,oversampling_factor,error");
  EXPECT_TRUE(ReadSweepCsv(dir_ / "e.csv").empty());
}

TEST_F(SweepCsvTest, OneRowIsTwoLines) {
  SweepRow r;
  r.scheme = Scheme::kCcif;
  r.omega_hz = 80;
  r.bits = 9;
  r.seed = 4;
  r.mse_db = -61.25;
  WriteSweepCsv(dir_ / "o.csv", {r});
  const auto lines = Lines(dir_ / "o.csv");
  ASSERT_EQ(lines.size(), 2U);
  EXPECT_EQ(lines[1], "trial,ccif,fixed,80,9,4,-61.25,0,0,0,0,0,0,0,0,");
}

TEST_F(SweepCsvTest, ReloadsIdenticalValues) {
  SweepGrid g;
  g.bits = {8, 12};
  g.omegas = {OmegaFromHz(80)};
  g.schemes = {Scheme::kCcif};
  g.bias_modes = {BiasMode::kFixed, BiasMode::kAlpha};
  g.seeds = {0, 1};
  const auto rows = Sweep(g, 1);
  ASSERT_GE(rows.size(), 10U);
  WriteSweepCsv(dir_ / "s.csv", rows);
  EXPECT_EQ(ReadSweepCsv(dir_ / "s.csv"), rows);
}

TEST_F(SweepCsvTest, PlotScriptAndTable) {
  WritePlotScript(dir_ / "plot.py", dir_ / "s.csv");
  std::ifstream in(dir_ / "plot.py");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("matplotlib"), std::string::npos);
  EXPECT_NE(ss.str().find("s.csv"), std::string::npos);
  EXPECT_THROW(WriteSweepCsv(dir_ / "missing" / "x.csv", {}), Error);
}

TEST(InterpolateMse, LinearAndClamped) {
  const std::vector<double> bps{6, 7, 8};
  const std::vector<double> mse{-40, -46, -52};
  EXPECT_DOUBLE_EQ(InterpolateMse(bps, mse, 6.5), -43);
  EXPECT_DOUBLE_EQ(InterpolateMse(bps, mse, 7.25), -47.5);
  EXPECT_DOUBLE_EQ(InterpolateMse(bps, mse, 5), -40);
  EXPECT_DOUBLE_EQ(InterpolateMse(bps, mse, 9), -52);
  EXPECT_THROW(InterpolateMse(bps, std::vector<double>{1.0}, 6), Error);
}

TEST(CompressionTable, RowsAreConsistent) {
  CompressionConfig tc;
  tc.seeds = {0, 1, 2};
  tc.cif_bits = {6, 10};
  const auto rows = CompressionTable(tc, 1);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].if_bits, 8U);
  EXPECT_EQ(rows[1].if_bits, 12U);
  for (const auto& r : rows) {
    EXPECT_GT(r.ccif_compression_percent, 0.0);
    EXPECT_GT(r.dcif_compression_percent, 0.0);
    EXPECT_LT(r.dcif_overhead_percent, 7.0);
  }
  EXPECT_GT(rows[0].ccif_compression_percent, rows[1].ccif_compression_percent);
}

SweepRow MeanRow(Scheme s, std::uint32_t bits, double mse, double total) {
  SweepRow r;
  r.kind = RowKind::kMean;
  r.scheme = s;
  r.omega_hz = 80;
  r.bits = bits;
  r.mse_db = mse;
  r.total_bits = total;
  r.firing_count = 100;
  return r;
}

TEST(Checks, MatchedBitGap) {
  std::vector<SweepRow> rows;
  for (std::uint32_t b = 6; b <= 15; ++b) {
    rows.push_back(MeanRow(Scheme::kUniform, b, -6.0 * b, 100.0 * b));
  }
  // 10 bits plus 0.5 bits/sample overhead: baseline is -63 dB there.
  rows.push_back(MeanRow(Scheme::kCcif, 10, -70.0, 1050.0));
  rows.push_back(MeanRow(Scheme::kDcif, 10, -64.0, 1050.0));
  rows.push_back(MeanRow(Scheme::kDcif, 7, -99.0, 750.0));  // outside 8..12
  const auto checks = CheckMatchedBitGap(rows);
  ASSERT_EQ(checks.size(), 2U);
  EXPECT_TRUE(checks[0].passed) << checks[0].detail;
  EXPECT_FALSE(checks[1].passed) << checks[1].detail;
}

TEST(Checks, OrderingAndTable) {
  std::vector<SweepRow> rows{MeanRow(Scheme::kCcif, 9, -60.0, 0),
                             MeanRow(Scheme::kDcif, 9, -60.4, 0),
                             MeanRow(Scheme::kCcif, 10, -60.0, 0),
                             MeanRow(Scheme::kDcif, 10, -61.0, 0)};
  const auto order = CheckSchemeOrdering(rows);
  ASSERT_EQ(order.size(), 2U);
  EXPECT_TRUE(order[0].passed);
  EXPECT_FALSE(order[1].passed);

  CompressionRow good{6, 8, -48, -48.5, -48.2, 20, 19, 4, 4.5, 4};
  CompressionRow next{7, 9, -54, -54.1, -54.0, 18, 17, 3.5, 4, 4};
  for (const auto& c : CheckCompressionTable(std::vector<CompressionRow>{good, next})) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  }
  next.dcif_compression_percent = 25;  // out of band and not decreasing
  int failed = 0;
  for (const auto& c : CheckCompressionTable(std::vector<CompressionRow>{good, next})) {
    failed += !c.passed;
  }
  EXPECT_EQ(failed, 2);
}

}  // namespace
}  // namespace ciftem::bench
