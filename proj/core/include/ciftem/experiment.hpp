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

// Monte-Carlo experiment harness: single trials, grid sweeps with aggregate
// rows, the K-2 vs K bit-compression table, and CSV / plot-script output.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ciftem/codec.hpp"
#include "ciftem/decoder.hpp"
#include "ciftem/params.hpp"

namespace ciftem::bench {

enum class BiasMode : std::uint8_t { kFixed = 0, kAlpha = 1 };

std::string_view ToString(BiasMode mode);
BiasMode ParseBiasMode(std::string_view text);

inline constexpr double kDefaultEnergy = 0.8;
inline constexpr double kDefaultScale = 0.5;
inline constexpr double kDefaultThreshold = 0.075;
inline constexpr double kDefaultFixedBias = 35.0;
inline constexpr double kDefaultAlpha = 6.0;
/// Default support of generated signals in grid spacings (pi/Omega).
inline constexpr double kDefaultSupportSpacings = 12.0;

struct TrialConfig {
  double omega = OmegaFromHz(80.0);  // rad/s
  double energy = kDefaultEnergy;
  double support_spacings = kDefaultSupportSpacings;
  std::uint64_t seed = 0;

  BiasMode bias_mode = BiasMode::kFixed;
  double fixed_bias = kDefaultFixedBias;
  double alpha = kDefaultAlpha;
  double scale = kDefaultScale;
  double threshold = kDefaultThreshold;

  Scheme scheme = Scheme::kUniform;
  std::uint32_t bits = 8;
  /// ccif: overrides the window count derived from the interval variance.
  std::optional<std::uint32_t> forced_windows;
  std::uint32_t max_windows = 64;
  EstimatorParams estimator;
  Accounting accounting = Accounting::kCompact;

  /// Skip quantization and reconstruct from the exact intervals.
  bool unquantized = false;
  double trim_fraction = 0.1;
  double regularization = 1e-8;

  double duration() const { return support_spacings * kPi / omega; }
  TemParams params() const;
  void Validate() const;
};

struct TrialMetrics {
  double mse_db = 0.0;
  std::uint64_t total_bits = 0;
  std::uint64_t residual_bits = 0;
  std::uint64_t window_bits = 0;
  std::uint64_t flag_bits = 0;
  double overhead_percent = 0.0;
  double avg_windows = 0.0;
  std::uint64_t firing_count = 0;
  double oversampling_factor = 0.0;
  bool density_satisfied = true;

  bool operator==(const TrialMetrics&) const = default;
};

/// Everything a trial produced, for callers that need more than metrics.
struct TrialArtifacts {
  BandlimitedSignal signal;
  FiringSequence firings;
  TimeBounds bounds;
  std::optional<CompressedStream> stream;
  std::vector<double> decoded_intervals;
  std::vector<std::uint32_t> window_counts;
  std::vector<double> grid;
  std::vector<double> truth;
  ReconstructedSignal reconstruction;
  TrialMetrics metrics;
};

/// generate -> encode -> quantize -> decode -> reconstruct -> measure.
/// Errors are rethrown with the trial's identity in the message.
/// Quantizes an encoded firing sequence with the scheme, bit depth and window
/// settings of the config. ccif derives L from the population variance of the
/// intervals unless forced_windows is set.
CompressedStream EncodeScheme(const TrialConfig& config,
                              const FiringSequence& firings,
                              const TimeBounds& bounds);

TrialMetrics RunTrial(const TrialConfig& config);
TrialArtifacts RunTrialDetailed(const TrialConfig& config);

struct SweepGrid {
  TrialConfig base;
  std::vector<std::uint32_t> bits;
  std::vector<double> omegas;  // rad/s
  std::vector<Scheme> schemes;
  std::vector<BiasMode> bias_modes;
  std::vector<std::uint64_t> seeds;
};

enum class RowKind : std::uint8_t { kTrial = 0, kMean = 1, kStddev = 2 };
std::string_view ToString(RowKind kind);

struct SweepRow {
  RowKind kind = RowKind::kTrial;
  Scheme scheme = Scheme::kUniform;
  BiasMode bias_mode = BiasMode::kFixed;
  double omega_hz = 0.0;
  std::uint32_t bits = 0;
  std::optional<std::uint64_t> seed;  // empty on aggregate rows
  double mse_db = 0.0;
  double total_bits = 0.0;
  double residual_bits = 0.0;
  double window_bits = 0.0;
  double flag_bits = 0.0;
  double overhead_percent = 0.0;
  double avg_windows = 0.0;
  double firing_count = 0.0;
  double oversampling_factor = 0.0;
  std::string error;  // non-empty when the trial failed

  bool operator==(const SweepRow&) const = default;
};

/// Trials run on `workers` threads (0 = hardware concurrency); rows come
/// back in grid order (bias mode, Omega, scheme, bits, seed), failed trials
/// keep their row with `error` set. Mean/stddev rows over the seeds of each
/// group are appended after all trial rows.
std::vector<SweepRow> Sweep(const SweepGrid& grid, unsigned workers = 0);

/// Runs configs on a worker pool; result i belongs to config i.
std::vector<TrialMetrics> RunTrials(const std::vector<TrialConfig>& configs,
                                    unsigned workers = 0);

/// Linear interpolation of an MSE curve sampled at increasing bits/sample;
/// clamps outside the sampled range.
double InterpolateMse(std::span<const double> bits_per_sample,
                      std::span<const double> mse_db, double query);

struct CompressionConfig {
  TrialConfig base;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> cif_bits{6, 7, 8, 9, 10, 11, 12, 13};
  std::uint32_t bit_gap = 2;
};

struct CompressionRow {
  std::uint32_t cif_bits = 0;
  std::uint32_t if_bits = 0;
  double if_mse_db = 0.0;
  double ccif_mse_db = 0.0;
  double dcif_mse_db = 0.0;
  double ccif_compression_percent = 0.0;
  double dcif_compression_percent = 0.0;
  double ccif_overhead_percent = 0.0;
  double dcif_overhead_percent = 0.0;
  double dcif_avg_windows = 0.0;
};

/// Overall bit compression of CIF at K-2 bits against IF at K bits, with
/// mean MSE of each scheme over the seeds:
///   compression = 100 * (1 - mean total bits CIF / mean total bits IF).
std::vector<CompressionRow> CompressionTable(const CompressionConfig& config, unsigned workers = 0);

/// Column order of the sweep CSV.
// Pass/fail checks over aggregated results. Each check carries a short name
// and a human-readable detail line.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr double kGapLowerDb = -25.0;
inline constexpr double kGapUpperDb = -3.0;
inline constexpr std::uint32_t kGapMinBits = 8;
inline constexpr std::uint32_t kGapMaxBits = 12;
inline constexpr double kMatchToleranceDb = 2.0;
inline constexpr double kCompressionLowPercent = 8.0;
inline constexpr double kCompressionHighPercent = 23.0;
inline constexpr double kOverheadCeilingPercent = 7.0;
inline constexpr double kMinAverageWindows = 2.0;
inline constexpr double kMaxAverageWindows = 8.0;
inline constexpr double kOrderingAllowanceDb = 0.5;

/// Mean MSE of each CIF scheme minus the baseline curve interpolated at the
/// same mean total bits per sample, for every mean row with bits in [8, 12].
std::vector<CheckResult> CheckMatchedBitGap(std::span<const SweepRow> rows);

/// Mean MSE of ccif must not exceed dcif by more than the allowance.
std::vector<CheckResult> CheckSchemeOrdering(std::span<const SweepRow> rows);

/// Matched MSE, compression band, monotone compression, overhead ceiling,
/// average dcif window count, and ccif/dcif ordering on the table rows.
std::vector<CheckResult> CheckCompressionTable(std::span<const CompressionRow> rows);

std::vector<std::string> SweepCsvColumns();
void WriteSweepCsv(const std::filesystem::path& path,
                   const std::vector<SweepRow>& rows);
std::vector<SweepRow> ReadSweepCsv(const std::filesystem::path& path);

void WriteCompressionCsv(const std::filesystem::path& path,
                    const std::vector<CompressionRow>& rows);

/// Matplotlib script that plots mean MSE versus bits per scheme from a sweep
/// CSV (one panel per bias mode).
void WritePlotScript(const std::filesystem::path& script_path,
                     const std::filesystem::path& csv_path);

}  // namespace ciftem::bench
