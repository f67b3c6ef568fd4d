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

#include "ciftem/bitstream.hpp"

#include "ciftem/error.hpp"

namespace ciftem {

void BitWriter::Write(std::uint64_t value, unsigned width) {
  Require(width <= 64, ErrorCode::kInvalidArgument, "code wider than 64 bits");
  for (unsigned i = width; i-- > 0;) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1U) {
      bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bits_ % 8));
    }
    ++bits_;
  }
}

std::uint64_t BitReader::Read(unsigned width) {
  Require(width <= 64, ErrorCode::kInvalidArgument, "code wider than 64 bits");
  if (width > remaining() || (pos_ + width + 7) / 8 > bytes_.size()) {
    Fail(ErrorCode::kMalformedStream, "bitstream truncated");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    const std::uint8_t byte = bytes_[pos_ / 8];
    const unsigned bit = (byte >> (7 - pos_ % 8)) & 1U;
    value = (value << 1) | bit;
    ++pos_;
  }
  return value;
}

}  // namespace ciftem
