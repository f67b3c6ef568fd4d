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

#include "ciftem/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ciftem/error.hpp"

namespace ciftem {
namespace {

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

void Finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

double ParseAt(const std::string& text, const std::filesystem::path& path,
               std::size_t line) {
  try {
    return ParseDouble(text);
  } catch (const Error& e) {
    Fail(ErrorCode::kIo, path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

// Reads "key,value" from a header line such as "omega,62.83".
double HeaderValue(std::istream& in, const std::string& key,
                   const std::filesystem::path& path, std::size_t line_no) {
  std::string line;
  if (!std::getline(in, line)) {
    Fail(ErrorCode::kIo, path.string() + ": missing '" + key + "' line");
  }
  const auto comma = line.find(',');
  if (comma == std::string::npos || line.substr(0, comma) != key) {
    Fail(ErrorCode::kIo, path.string() + ": expected '" + key + ",<value>'");
  }
  return ParseAt(line.substr(comma + 1), path, line_no);
}

std::vector<double> ValueLines(std::istream& in, const std::filesystem::path& path,
                               std::size_t first_line) {
  std::vector<double> values;
  std::string line;
  for (std::size_t n = first_line; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    values.push_back(ParseAt(line, path, n));
  }
  return values;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

double ParseDouble(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  std::size_t end = text.find_last_not_of(" \t\r");
  if (begin == std::string::npos) {
    Fail(ErrorCode::kInvalidArgument, "empty numeric field");
  }
  double value = 0.0;
  const char* first = text.data() + begin;
  const char* last = text.data() + end + 1;
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last) {
    Fail(ErrorCode::kInvalidArgument, "not a number: '" + text + "'");
  }
  return value;
}

void WriteSignalCsv(const std::filesystem::path& path,
                    const BandlimitedSignal& signal) {
  auto out = OpenOut(path);
  out << "omega," << FormatDouble(signal.omega()) << '\n'
      << "energy," << FormatDouble(signal.energy()) << '\n'
      << "duration," << FormatDouble(signal.duration()) << '\n';
  for (double c : signal.coefficients()) out << FormatDouble(c) << '\n';
  Finish(out, path);
}

BandlimitedSignal ReadSignalCsv(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  const double omega = HeaderValue(in, "omega", path, 1);
  HeaderValue(in, "energy", path, 2);  // recomputed from the coefficients
  const double duration = HeaderValue(in, "duration", path, 3);
  return BandlimitedSignal(omega, ValueLines(in, path, 4), duration);
}

void WriteFiringCsv(const std::filesystem::path& path,
                    const FiringSequence& firings) {
  auto out = OpenOut(path);
  out << "t0," << FormatDouble(firings.t0) << '\n';
  for (double t : firings.intervals) out << FormatDouble(t) << '\n';
  Finish(out, path);
}

FiringSequence ReadFiringCsv(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  FiringSequence firings;
  firings.t0 = HeaderValue(in, "t0", path, 1);
  firings.intervals = ValueLines(in, path, 2);
  return firings;
}

void WriteSeriesCsv(const std::filesystem::path& path,
                    std::span<const double> times,
                    std::span<const double> values,
                    const std::string& value_name) {
  Require(times.size() == values.size(), ErrorCode::kInvalidArgument,
          "time and value columns differ in length");
  auto out = OpenOut(path);
  out << "time," << value_name << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << FormatDouble(times[i]) << ',' << FormatDouble(values[i]) << '\n';
  }
  Finish(out, path);
}

void WriteIntervalsCsv(const std::filesystem::path& path,
                       std::span<const double> intervals) {
  auto out = OpenOut(path);
  out << "index,interval\n";
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    out << i << ',' << FormatDouble(intervals[i]) << '\n';
  }
  Finish(out, path);
}

}  // namespace ciftem
