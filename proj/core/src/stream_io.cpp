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

#include "ciftem/stream_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "ciftem/bitstream.hpp"
#include "ciftem/error.hpp"

namespace ciftem {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'C', 'T', 'E', 'M'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void Put(std::vector<std::uint8_t>& out, std::size_t offset, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::uint64_t bits = 0;
  if constexpr (std::is_floating_point_v<T>) {
    bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out[offset + i] = static_cast<std::uint8_t>(bits >> (8 * i));
  }
}

template <typename T>
T Get(std::span<const std::uint8_t> in, std::size_t offset) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<std::uint64_t>(in[offset + i]) << (8 * i);
  }
  if constexpr (std::is_floating_point_v<T>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

template <typename T>
T Narrow(std::uint64_t value, const char* what) {
  if (value > std::numeric_limits<T>::max()) {
    Fail(ErrorCode::kInvalidArgument, std::string(what) + " exceeds header field");
  }
  return static_cast<T>(value);
}

}  // namespace

std::vector<std::uint8_t> SerializeStream(const CompressedStream& stream,
                                          Accounting framing) {
  const StreamHeader& h = stream.header;
  const std::uint32_t level_bits = BitsForLevels(h.levels);
  const DecodedStream decoded = DecodeStream(stream);  // validates records

  BitWriter payload;
  std::vector<std::uint32_t> events;
  for (std::size_t n = 0; n < stream.records.size(); ++n) {
    const Record& record = stream.records[n];
    const unsigned window_width = CeilLog2(decoded.window_counts[n]);
    if (framing == Accounting::kSelfDelimiting) {
      payload.WriteBit(record.window.has_value());
    } else if (record.window) {
      events.push_back(Narrow<std::uint32_t>(n, "record index"));
    }
    if (record.window) payload.Write(*record.window, window_width);
    payload.Write(record.residual, level_bits);
  }

  std::vector<std::uint8_t> out(kStreamHeaderBytes, 0);
  std::memcpy(out.data(), kMagic.data(), kMagic.size());
  out[4] = kVersion;
  out[5] = static_cast<std::uint8_t>(h.scheme);
  out[6] = static_cast<std::uint8_t>(framing);
  Put<std::uint32_t>(out, 8, level_bits);
  const bool dcif = h.scheme == Scheme::kDcif;
  Put<std::uint16_t>(out, 12, Narrow<std::uint16_t>(h.windows, "L"));
  Put<std::uint16_t>(out, 14,
                     dcif ? Narrow<std::uint16_t>(h.estimator.max_windows, "L_max") : 0);
  Put<std::uint16_t>(out, 16,
                     dcif ? Narrow<std::uint16_t>(h.estimator.window_length, "m") : 0);
  Put<std::uint16_t>(out, 18,
                     dcif ? Narrow<std::uint16_t>(h.estimator.update_every, "l") : 0);
  Put<std::uint32_t>(out, 20,
                     Narrow<std::uint32_t>(stream.records.size(), "record count"));
  Put<double>(out, 24, h.bounds.dt_min);
  Put<double>(out, 32, h.bounds.dt_max);
  Put<double>(out, 40, h.t0);
  Put<double>(out, 48, h.params.bias);
  Put<std::uint32_t>(out, 56,
                     Narrow<std::uint32_t>(payload.bit_count(), "payload size"));
  Put<std::uint32_t>(out, 60, static_cast<std::uint32_t>(events.size()));

  out.insert(out.end(), payload.bytes().begin(), payload.bytes().end());
  for (std::uint32_t index : events) {
    const std::size_t at = out.size();
    out.resize(at + 4);
    Put<std::uint32_t>(out, at, index);
  }
  return out;
}

Accounting StreamFraming(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kStreamHeaderBytes ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    Fail(ErrorCode::kMalformedStream, "not a CTEM stream");
  }
  if (bytes[6] > 1) Fail(ErrorCode::kMalformedStream, "unknown framing");
  return static_cast<Accounting>(bytes[6]);
}

CompressedStream DeserializeStream(std::span<const std::uint8_t> bytes) {
  const Accounting framing = StreamFraming(bytes);
  if (bytes[4] != kVersion) Fail(ErrorCode::kMalformedStream, "unsupported version");
  if (bytes[5] > 2) Fail(ErrorCode::kMalformedStream, "unknown scheme");

  CompressedStream stream;
  StreamHeader& h = stream.header;
  h.scheme = static_cast<Scheme>(bytes[5]);
  const auto level_bits = Get<std::uint32_t>(bytes, 8);
  if (level_bits > 62) Fail(ErrorCode::kMalformedStream, "K too large");
  h.levels = std::uint64_t{1} << level_bits;
  h.windows = Get<std::uint16_t>(bytes, 12);
  if (h.scheme == Scheme::kDcif) {
    h.estimator.initial_windows = h.windows;
    h.estimator.max_windows = Get<std::uint16_t>(bytes, 14);
    h.estimator.window_length = Get<std::uint16_t>(bytes, 16);
    h.estimator.update_every = Get<std::uint16_t>(bytes, 18);
  }
  const auto count = Get<std::uint32_t>(bytes, 20);
  h.bounds.dt_min = Get<double>(bytes, 24);
  h.bounds.dt_max = Get<double>(bytes, 32);
  h.t0 = Get<double>(bytes, 40);
  const double bias = Get<double>(bytes, 48);
  const auto payload_bits = Get<std::uint32_t>(bytes, 56);
  const auto event_count = Get<std::uint32_t>(bytes, 60);
  if (h.windows < 1 || !(h.bounds.dt_max > h.bounds.dt_min) ||
      !(h.bounds.dt_min > 0.0)) {
    Fail(ErrorCode::kMalformedStream, "invalid stream header");
  }

  // dt_min = kd/(b+c), dt_max = kd/(b-c)  =>  kd = 2b / (1/dt_min + 1/dt_max)
  h.params.bias = bias;
  h.params.scale = 1.0;
  h.params.threshold =
      2.0 * bias / (1.0 / h.bounds.dt_min + 1.0 / h.bounds.dt_max);

  const std::size_t payload_bytes = (static_cast<std::size_t>(payload_bits) + 7) / 8;
  const std::size_t expected =
      kStreamHeaderBytes + payload_bytes +
      (framing == Accounting::kCompact ? 4 * static_cast<std::size_t>(event_count) : 0);
  if (bytes.size() != expected) {
    Fail(ErrorCode::kMalformedStream, "stream size does not match header");
  }
  const auto payload = bytes.subspan(kStreamHeaderBytes, payload_bytes);

  std::vector<bool> has_window(count, false);
  if (framing == Accounting::kCompact) {
    const auto table = bytes.subspan(kStreamHeaderBytes + payload_bytes);
    std::uint32_t previous = 0;
    for (std::uint32_t e = 0; e < event_count; ++e) {
      const auto index = Get<std::uint32_t>(table, 4 * e);
      if (index >= count || (e > 0 && index <= previous)) {
        Fail(ErrorCode::kMalformedStream, "bad window event table");
      }
      has_window[index] = true;
      previous = index;
    }
  }

  // Window widths depend on L, which in dcif mode follows the decoded values.
  std::optional<WindowEstimator> est;
  if (h.scheme == Scheme::kDcif) {
    try {
      est.emplace(h.estimator, h.bounds);
    } catch (const Error& e) {
      Fail(ErrorCode::kMalformedStream, e.what());
    }
  }
  BitReader reader(payload, payload_bits);
  stream.records.reserve(count);
  std::uint32_t window = 0;
  for (std::uint32_t n = 0; n < count; ++n) {
    const std::uint32_t windows = est ? est->NextWindowCount() : h.windows;
    Record record;
    const bool present = framing == Accounting::kSelfDelimiting
                             ? reader.ReadBit()
                             : has_window[n];
    if (present) {
      record.window = static_cast<std::uint32_t>(reader.Read(CeilLog2(windows)));
      if (*record.window >= windows) {
        Fail(ErrorCode::kMalformedStream, "window index out of range");
      }
      window = *record.window;
    }
    record.residual = reader.Read(level_bits);
    stream.records.push_back(record);
    if (est) {
      const WindowPartition partition{windows, h.bounds};
      est->Push(WindowedDequantize(WindowedCode{window, record.residual},
                                   partition, h.levels));
    }
  }
  if (reader.remaining() != 0) {
    Fail(ErrorCode::kMalformedStream, "trailing payload bits");
  }
  return stream;
}

void WriteStreamFile(const std::filesystem::path& path,
                     const CompressedStream& stream, Accounting framing) {
  const auto bytes = SerializeStream(stream, framing);
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

CompressedStream ReadStreamFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DeserializeStream(bytes);
}

}  // namespace ciftem
