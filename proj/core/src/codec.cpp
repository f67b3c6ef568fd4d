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
#include <string>

#include "ciftem/error.hpp"

namespace ciftem {

std::string_view ToString(Scheme scheme) {
  switch (scheme) {
    case Scheme::kUniform: return "iftem";
    case Scheme::kCcif: return "ccif";
    case Scheme::kDcif: return "dcif";
  }
  return "?";
}

std::string_view ToString(Accounting accounting) {
  return accounting == Accounting::kCompact ? "compact" : "self-delimiting";
}

Scheme ParseScheme(std::string_view text) {
  if (text == "iftem" || text == "uniform") return Scheme::kUniform;
  if (text == "ccif") return Scheme::kCcif;
  if (text == "dcif") return Scheme::kDcif;
  Fail(ErrorCode::kInvalidArgument, "unknown scheme '" + std::string(text) + "'");
}

Accounting ParseAccounting(std::string_view text) {
  if (text == "compact") return Accounting::kCompact;
  if (text == "self-delimiting") return Accounting::kSelfDelimiting;
  Fail(ErrorCode::kInvalidArgument,
       "unknown accounting mode '" + std::string(text) + "'");
}

void EstimatorParams::Validate() const {
  Require(window_length > 1, ErrorCode::kInvalidArgument,
          "estimator length m must exceed 1");
  Require(update_every >= 1, ErrorCode::kInvalidArgument,
          "estimator cadence l must be at least 1");
  Require(max_windows >= 1, ErrorCode::kInvalidArgument,
          "maximum window count must be at least 1");
  Require(initial_windows >= 1 && initial_windows <= max_windows,
          ErrorCode::kInvalidArgument,
          "initial window count must lie in [1, max]");
}

WindowEstimator::WindowEstimator(const EstimatorParams& params,
                                 const TimeBounds& bounds)
    : params_(params), bounds_(bounds), current_(params.initial_windows) {
  params_.Validate();
  history_.reserve(params_.window_length);
}

std::uint32_t WindowEstimator::NextWindowCount() {
  const std::uint64_t m = params_.window_length;
  if (seen_ >= m && (seen_ - m) % params_.update_every == 0) {
    stats_ = ComputeRunningStats(history_);
    current_ = ConstWindowCount(stats_.variance, bounds_, params_.max_windows);
  }
  return current_;
}

void WindowEstimator::Push(double decoded_interval) {
  if (history_.size() < params_.window_length) {
    history_.push_back(decoded_interval);
  } else {
    history_[seen_ % params_.window_length] = decoded_interval;
  }
  ++seen_;
}

std::size_t CompressedStream::window_events() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(),
      [](const Record& r) { return r.window.has_value(); }));
}

namespace {

StreamHeader MakeHeader(const FiringSequence& firings, Scheme scheme,
                        std::uint64_t levels, std::uint32_t windows,
                        const TimeBounds& bounds) {
  Require(levels >= 1, ErrorCode::kInvalidArgument, "K must be at least 1");
  Require(windows >= 1, ErrorCode::kInvalidArgument, "L must be at least 1");
  Require(bounds.dt_max > bounds.dt_min && bounds.dt_min > 0.0,
          ErrorCode::kInvalidArgument, "invalid time bounds");
  StreamHeader header;
  header.scheme = scheme;
  header.levels = levels;
  header.windows = windows;
  header.bounds = bounds;
  header.t0 = firings.t0;
  header.params = firings.params;
  return header;
}

CompressedStream EncodeConstant(const FiringSequence& firings, Scheme scheme,
                                std::uint32_t windows, std::uint64_t levels,
                                const TimeBounds& bounds) {
  CompressedStream stream;
  stream.header = MakeHeader(firings, scheme, levels, windows, bounds);
  const WindowPartition partition{windows, bounds};
  stream.records.reserve(firings.intervals.size());
  std::optional<std::uint32_t> previous;
  for (double interval : firings.intervals) {
    const WindowedCode code = WindowedQuantize(interval, partition, levels);
    Record record;
    record.residual = code.residual;
    if (previous != code.window) record.window = code.window;
    previous = code.window;
    stream.records.push_back(record);
  }
  return stream;
}

}  // namespace

CompressedStream UniformEncode(const FiringSequence& firings,
                               std::uint64_t levels, const TimeBounds& bounds) {
  return EncodeConstant(firings, Scheme::kUniform, 1, levels, bounds);
}

CompressedStream CcifEncode(const FiringSequence& firings,
                            std::uint32_t windows, std::uint64_t levels,
                            const TimeBounds& bounds) {
  return EncodeConstant(firings, Scheme::kCcif, windows, levels, bounds);
}

CompressedStream DcifEncode(const FiringSequence& firings,
                            std::uint64_t levels,
                            const EstimatorParams& estimator,
                            const TimeBounds& bounds,
                            std::vector<std::uint32_t>* window_counts) {
  estimator.Validate();
  CompressedStream stream;
  stream.header = MakeHeader(firings, Scheme::kDcif, levels,
                             estimator.initial_windows, bounds);
  stream.header.estimator = estimator;
  if (window_counts) window_counts->clear();

  WindowEstimator est(estimator, bounds);
  std::optional<std::uint32_t> previous_window;
  std::uint32_t previous_count = 0;
  for (double interval : firings.intervals) {
    const std::uint32_t count = est.NextWindowCount();
    const WindowPartition partition{count, bounds};
    const WindowedCode code = WindowedQuantize(interval, partition, levels);
    Record record;
    record.residual = code.residual;
    if (count != previous_count || previous_window != code.window) {
      record.window = code.window;
    }
    previous_window = code.window;
    previous_count = count;
    stream.records.push_back(record);
    est.Push(WindowedDequantize(code, partition, levels));
    if (window_counts) window_counts->push_back(count);
  }
  return stream;
}

DecodedStream DecodeStream(const CompressedStream& stream) {
  const StreamHeader& h = stream.header;
  if (h.levels < 1 || h.windows < 1 || !(h.bounds.dt_max > h.bounds.dt_min)) {
    Fail(ErrorCode::kMalformedStream, "invalid stream header");
  }
  std::optional<WindowEstimator> est;
  if (h.scheme == Scheme::kDcif) {
    try {
      est.emplace(h.estimator, h.bounds);
    } catch (const Error& e) {
      Fail(ErrorCode::kMalformedStream, e.what());
    }
  }

  DecodedStream out;
  out.intervals.reserve(stream.records.size());
  out.window_counts.reserve(stream.records.size());
  std::uint32_t window = 0;
  std::uint32_t previous_count = 0;
  for (std::size_t n = 0; n < stream.records.size(); ++n) {
    const Record& record = stream.records[n];
    const std::uint32_t count = est ? est->NextWindowCount() : h.windows;
    if (record.window) {
      if (*record.window >= count) {
        Fail(ErrorCode::kMalformedStream,
             "window index " + std::to_string(*record.window) +
                 " out of range at record " + std::to_string(n));
      }
      window = *record.window;
    } else if (n == 0 || count != previous_count) {
      Fail(ErrorCode::kMalformedStream,
           "missing window index at record " + std::to_string(n));
    }
    if (record.residual >= h.levels) {
      Fail(ErrorCode::kMalformedStream,
           "residual code out of range at record " + std::to_string(n));
    }
    const WindowPartition partition{count, h.bounds};
    const double value =
        WindowedDequantize(WindowedCode{window, record.residual}, partition,
                           h.levels);
    out.intervals.push_back(value);
    out.window_counts.push_back(count);
    if (est) est->Push(value);
    previous_count = count;
  }
  return out;
}

BitReport BitCost(const CompressedStream& stream, Accounting accounting) {
  BitReport report;
  report.accounting = accounting;
  const std::uint64_t n = stream.records.size();
  report.residual_bits = n * CeilLog2(stream.header.levels);

  std::vector<std::uint32_t> counts;
  if (stream.header.scheme == Scheme::kDcif) {
    counts = DecodeStream(stream).window_counts;
  }
  for (std::size_t i = 0; i < stream.records.size(); ++i) {
    if (!stream.records[i].window) continue;
    const std::uint32_t count = counts.empty() ? stream.header.windows : counts[i];
    report.window_bits += CeilLog2(count);
  }
  if (accounting == Accounting::kSelfDelimiting) report.flag_bits = n;
  report.total_bits = report.residual_bits + report.window_bits + report.flag_bits;
  report.overhead_percent =
      report.residual_bits == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.window_bits + report.flag_bits) /
                static_cast<double>(report.residual_bits);
  return report;
}

double EffectiveStep(const TimeBounds& bounds, std::uint32_t windows,
                     std::uint64_t levels) {
  return bounds.range() / static_cast<double>(windows) /
         static_cast<double>(levels);
}

}  // namespace ciftem
