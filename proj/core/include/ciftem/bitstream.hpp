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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ciftem {

/// Appends fixed-width codes most-significant bit first.
class BitWriter {
 public:
  void Write(std::uint64_t value, unsigned width);
  void WriteBit(bool bit) { Write(bit ? 1 : 0, 1); }

  std::size_t bit_count() const { return bits_; }
  /// Buffer with the final partial byte zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
      : bytes_(bytes), limit_(bit_count) {}

  /// Throws kMalformedStream when reading past the declared bit count.
  std::uint64_t Read(unsigned width);
  bool ReadBit() { return Read(1) != 0; }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace ciftem
