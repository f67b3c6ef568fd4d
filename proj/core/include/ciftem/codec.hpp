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

// Compressed interval streams. Three schemes share one record layout:
//   uniform - K levels over the whole dynamic range (one window)
//   ccif    - a constant number L of windows, K levels inside each
//   dcif    - L re-estimated from the trailing decoded intervals
// A record carries its window index only when it differs from the previous
// record's (the first record always carries one; in dcif mode so does the
// first record after every change of L).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ciftem/encoder.hpp"
#include "ciftem/params.hpp"
#include "ciftem/quantizer.hpp"

namespace ciftem {

enum class Scheme : std::uint8_t { kUniform = 0, kCcif = 1, kDcif = 2 };
enum class Accounting : std::uint8_t { kCompact = 0, kSelfDelimiting = 1 };

std::string_view ToString(Scheme scheme);
std::string_view ToString(Accounting accounting);
Scheme ParseScheme(std::string_view text);
Accounting ParseAccounting(std::string_view text);

struct EstimatorParams {
  std::uint32_t window_length = 40;  // m
  std::uint32_t update_every = 5;    // l
  std::uint32_t initial_windows = 4;
  std::uint32_t max_windows = 64;

  void Validate() const;
  bool operator==(const EstimatorParams&) const = default;
};

/// Online window-count estimator. Both the encoder and the decoder feed it
/// the decoded intervals, so their L sequences agree without side
/// information. Before coding sample n, if n >= m and (n - m) % l == 0, L is
/// recomputed from the m most recent decoded intervals.
class WindowEstimator {
 public:
  WindowEstimator(const EstimatorParams& params, const TimeBounds& bounds);

  /// L to use for the next sample; may update the statistics.
  std::uint32_t NextWindowCount();
  void Push(double decoded_interval);

  std::uint32_t window_count() const { return current_; }
  const RunningStats& stats() const { return stats_; }

 private:
  EstimatorParams params_;
  TimeBounds bounds_;
  std::vector<double> history_;  // ring of the last m decoded intervals
  std::uint64_t seen_ = 0;
  std::uint32_t current_;
  RunningStats stats_;
};

struct StreamHeader {
  Scheme scheme = Scheme::kUniform;
  std::uint64_t levels = 1;
  std::uint32_t windows = 1;  // L for uniform/ccif
  EstimatorParams estimator;  // dcif only
  TimeBounds bounds;
  double t0 = 0.0;
  TemParams params;
  SignalSpec signal;

  bool operator==(const StreamHeader&) const = default;
};

struct Record {
  std::optional<std::uint32_t> window;
  std::uint64_t residual = 0;

  bool operator==(const Record&) const = default;
};

struct CompressedStream {
  StreamHeader header;
  std::vector<Record> records;

  std::size_t window_events() const;
  bool operator==(const CompressedStream&) const = default;
};

struct BitReport {
  std::uint64_t total_bits = 0;
  std::uint64_t residual_bits = 0;
  std::uint64_t window_bits = 0;
  std::uint64_t flag_bits = 0;
  double overhead_percent = 0.0;
  Accounting accounting = Accounting::kCompact;
};

CompressedStream UniformEncode(const FiringSequence& firings,
                               std::uint64_t levels, const TimeBounds& bounds);
CompressedStream CcifEncode(const FiringSequence& firings,
                            std::uint32_t windows, std::uint64_t levels,
                            const TimeBounds& bounds);
/// `window_counts`, when given, receives the L used for every sample.
CompressedStream DcifEncode(const FiringSequence& firings,
                            std::uint64_t levels,
                            const EstimatorParams& estimator,
                            const TimeBounds& bounds,
                            std::vector<std::uint32_t>* window_counts = nullptr);

struct DecodedStream {
  std::vector<double> intervals;
  /// Window count in force for every sample.
  std::vector<std::uint32_t> window_counts;
};

/// Throws kMalformedStream on residual >= K, window >= L or a missing window
/// index where one is required.
DecodedStream DecodeStream(const CompressedStream& stream);

/// Bits needed to represent the stream. Compact accounting counts N log2 K
/// residual bits plus ceil(log2 L) per window emission; self-delimiting adds
/// one flag bit per record.
BitReport BitCost(const CompressedStream& stream, Accounting accounting);

/// Effective step (window width / K) for a given L.
double EffectiveStep(const TimeBounds& bounds, std::uint32_t windows,
                     std::uint64_t levels);

}  // namespace ciftem
