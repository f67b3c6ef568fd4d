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

// Plain-text dumps: signals (header with Omega, E, duration then one
// coefficient per line), firing sequences (t0 header, one interval per
// line), two-column time/value series and decoded interval lists.

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ciftem/encoder.hpp"
#include "ciftem/signal.hpp"

namespace ciftem {

/// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);
double ParseDouble(const std::string& text);

void WriteSignalCsv(const std::filesystem::path& path,
                    const BandlimitedSignal& signal);
BandlimitedSignal ReadSignalCsv(const std::filesystem::path& path);

/// TemParams are not part of the file; the reader leaves them default.
void WriteFiringCsv(const std::filesystem::path& path,
                    const FiringSequence& firings);
FiringSequence ReadFiringCsv(const std::filesystem::path& path);

void WriteSeriesCsv(const std::filesystem::path& path,
                    std::span<const double> times,
                    std::span<const double> values,
                    const std::string& value_name = "value");

void WriteIntervalsCsv(const std::filesystem::path& path,
                       std::span<const double> intervals);

}  // namespace ciftem
