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

// Binary container for CompressedStream.
//
// Header, 64 bytes, little-endian:
//   0  char[4]  magic "CTEM"
//   4  u8       format version (1)
//   5  u8       scheme (0 uniform, 1 ccif, 2 dcif)
//   6  u8       framing (0 compact, 1 self-delimiting)
//   7  u8       reserved, 0
//   8  u32      log2 K
//  12  u16      L (uniform/ccif) or initial L (dcif)
//  14  u16      maximum L (dcif)
//  16  u16      m, estimator length (dcif)
//  18  u16      l, estimator cadence (dcif)
//  20  u32      record count N
//  24  f64      dt_min
//  32  f64      dt_max
//  40  f64      t0
//  48  f64      bias b
//  56  u32      payload bit count
//  60  u32      window event count E
//
// Payload: records packed MSB first. Self-delimiting framing writes, per
// record, a change flag, then the window index (ceil(log2 L) bits) when the
// flag is set, then the log2 K residual bits. Compact framing omits the flags;
// instead the payload is followed by E u32 record indices of the window
// events (byte-aligned, little-endian).

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ciftem/codec.hpp"

namespace ciftem {

inline constexpr std::size_t kStreamHeaderBytes = 64;

std::vector<std::uint8_t> SerializeStream(const CompressedStream& stream,
                                          Accounting framing);

/// Restores records and the fields stored in the header. TemParams are
/// rebuilt from b and the bounds (kappa*delta is recovered, kappa set to 1);
/// the signal digest is not stored.
CompressedStream DeserializeStream(std::span<const std::uint8_t> bytes);

Accounting StreamFraming(std::span<const std::uint8_t> bytes);

void WriteStreamFile(const std::filesystem::path& path,
                     const CompressedStream& stream, Accounting framing);
CompressedStream ReadStreamFile(const std::filesystem::path& path);

}  // namespace ciftem
