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

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "ciftem/csv.hpp"
#include "ciftem/error.hpp"

namespace ciftem::bench {
namespace {

// Runs body(i) for i in [0, count) on a fixed pool; each index is claimed by
// exactly one worker, so writes to slot i need no locking.
template <typename Body>
void ParallelFor(std::size_t count, unsigned workers, const Body& body) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

std::string Describe(const TrialConfig& c) {
  std::ostringstream os;
  os << "trial[scheme=" << ToString(c.scheme) << " bits=" << c.bits
     << " bias=" << ToString(c.bias_mode) << " f=" << HzFromOmega(c.omega)
     << "Hz seed=" << c.seed << "]";
  return os.str();
}

std::string Sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

double Mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double Stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string_view ToString(BiasMode mode) {
  return mode == BiasMode::kFixed ? "fixed" : "alpha";
}

BiasMode ParseBiasMode(std::string_view text) {
  if (text == "fixed" || text == "fixed-b") return BiasMode::kFixed;
  if (text == "alpha" || text == "alpha-c") return BiasMode::kAlpha;
  Fail(ErrorCode::kInvalidArgument, "unknown bias mode '" + std::string(text) + "'");
}

std::string_view ToString(RowKind kind) {
  switch (kind) {
    case RowKind::kTrial: return "trial";
    case RowKind::kMean: return "mean";
    case RowKind::kStddev: return "stddev";
  }
  return "?";
}

TemParams TrialConfig::params() const {
  if (bias_mode == BiasMode::kFixed) {
    return TemParams::FixedBias(fixed_bias, scale, threshold);
  }
  return TemParams::FromAlpha(alpha, AmplitudeBound(energy, omega), scale,
                              threshold);
}

void TrialConfig::Validate() const {
  Require(std::isfinite(omega) && omega > 0.0, ErrorCode::kInvalidArgument,
          "Omega must be positive");
  Require(energy >= 0.0, ErrorCode::kInvalidArgument, "energy must be >= 0");
  Require(support_spacings >= kMinSupportSpacings, ErrorCode::kInvalidArgument,
          "support must span at least 10 grid spacings");
  Require(bits >= 1 && bits <= 30, ErrorCode::kInvalidArgument,
          "bits must lie in [1, 30]");
  Require(max_windows >= 1, ErrorCode::kInvalidArgument,
          "maximum window count must be at least 1");
  if (forced_windows) {
    Require(*forced_windows >= 1, ErrorCode::kInvalidArgument,
            "forced window count must be at least 1");
  }
  if (scheme == Scheme::kDcif) estimator.Validate();
  params().Validate();
}

CompressedStream EncodeScheme(const TrialConfig& config,
                              const FiringSequence& firings,
                              const TimeBounds& bounds) {
  const std::uint64_t levels = std::uint64_t{1} << config.bits;
  switch (config.scheme) {
    case Scheme::kUniform:
      return UniformEncode(firings, levels, bounds);
    case Scheme::kCcif: {
      std::uint32_t windows = 1;
      if (config.forced_windows) {
        windows = *config.forced_windows;
      } else if (firings.intervals.size() > 1) {
        windows = ConstWindowCount(
            ComputeRunningStats(firings.intervals).variance, bounds,
            config.max_windows);
      }
      return CcifEncode(firings, windows, levels, bounds);
    }
    case Scheme::kDcif:
      break;
  }
  return DcifEncode(firings, levels, config.estimator, bounds);
}

TrialArtifacts RunTrialDetailed(const TrialConfig& config) {
  try {
    config.Validate();
    TrialArtifacts art;
    const double duration = config.duration();
    const TemParams params = config.params();
    const double c = AmplitudeBound(config.energy, config.omega);
    art.bounds = ComputeTimeBounds(params, c);
    art.signal = Generate(config.omega, config.energy, duration, config.seed);
    art.firings = Encode(art.signal, params, 0.0, duration);

    TrialMetrics& m = art.metrics;
    const auto& intervals = art.firings.intervals;
    if (config.unquantized) {
      art.decoded_intervals = intervals;
      art.window_counts.assign(intervals.size(), 1);
    } else {
      art.stream = EncodeScheme(config, art.firings, art.bounds);
      DecodedStream decoded = DecodeStream(*art.stream);
      art.decoded_intervals = std::move(decoded.intervals);
      art.window_counts = std::move(decoded.window_counts);
      const BitReport report = BitCost(*art.stream, config.accounting);
      m.total_bits = report.total_bits;
      m.residual_bits = report.residual_bits;
      m.window_bits = report.window_bits;
      m.flag_bits = report.flag_bits;
      m.overhead_percent = report.overhead_percent;
    }
    m.avg_windows =
        art.window_counts.empty()
            ? 0.0
            : std::accumulate(art.window_counts.begin(), art.window_counts.end(),
                              0.0) /
                  static_cast<double>(art.window_counts.size());
    m.firing_count = art.firings.firing_count();
    m.oversampling_factor = OversamplingFactor(art.firings, config.omega);

    const std::vector<double> times =
        FiringTimes(art.firings.t0, art.decoded_intervals);
    ReconstructionConfig rc = ReconstructionConfig::ForBand(config.omega);
    rc.regularization = config.regularization;
    rc.trim_fraction = config.trim_fraction;
    rc.grid_begin = 0.0;
    rc.grid_end = duration;
    art.reconstruction = Reconstruct(times, params, rc);
    art.grid = art.reconstruction.grid_times;
    art.truth = SampleSignal(art.signal, art.grid);
    m.mse_db = MseDb(art.truth, art.reconstruction.values, rc.grid_spacing,
                     rc.trim_fraction);
    m.density_satisfied = CheckDensity(params, c, config.omega);
    return art;
  } catch (const Error& e) {
    throw Error(e.code(), Describe(config) + ": " + e.what());
  }
}

TrialMetrics RunTrial(const TrialConfig& config) {
  return RunTrialDetailed(config).metrics;
}

std::vector<TrialMetrics> RunTrials(const std::vector<TrialConfig>& configs,
                                    unsigned workers) {
  std::vector<TrialMetrics> results(configs.size());
  std::vector<std::string> errors(configs.size());
  std::vector<ErrorCode> codes(configs.size(), ErrorCode::kInternalConsistency);
  ParallelFor(configs.size(), workers, [&](std::size_t i) {
    try {
      results[i] = RunTrial(configs[i]);
    } catch (const Error& e) {
      errors[i] = e.what();
      codes[i] = e.code();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw Error(codes[i], errors[i]);
  }
  return results;
}

std::vector<SweepRow> Sweep(const SweepGrid& grid, unsigned workers) {
  Require(!grid.bits.empty() && !grid.omegas.empty() && !grid.schemes.empty() &&
              !grid.bias_modes.empty() && !grid.seeds.empty(),
          ErrorCode::kInvalidArgument, "sweep grid has an empty axis");

  std::vector<TrialConfig> configs;
  std::vector<SweepRow> rows;
  for (BiasMode mode : grid.bias_modes) {
    for (double omega : grid.omegas) {
      for (Scheme scheme : grid.schemes) {
        for (std::uint32_t bits : grid.bits) {
          for (std::uint64_t seed : grid.seeds) {
            TrialConfig c = grid.base;
            c.bias_mode = mode;
            c.omega = omega;
            c.scheme = scheme;
            c.bits = bits;
            c.seed = seed;
            configs.push_back(c);
            SweepRow row;
            row.scheme = scheme;
            row.bias_mode = mode;
            row.omega_hz = HzFromOmega(omega);
            row.bits = bits;
            row.seed = seed;
            rows.push_back(row);
          }
        }
      }
    }
  }

  ParallelFor(configs.size(), workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      const TrialMetrics m = RunTrial(configs[i]);
      row.mse_db = m.mse_db;
      row.total_bits = static_cast<double>(m.total_bits);
      row.residual_bits = static_cast<double>(m.residual_bits);
      row.window_bits = static_cast<double>(m.window_bits);
      row.flag_bits = static_cast<double>(m.flag_bits);
      row.overhead_percent = m.overhead_percent;
      row.avg_windows = m.avg_windows;
      row.firing_count = static_cast<double>(m.firing_count);
      row.oversampling_factor = m.oversampling_factor;
    } catch (const std::exception& e) {
      row.error = Sanitize(e.what());
    }
  });

  // Trial rows are grouped contiguously by (mode, omega, scheme, bits).
  const std::size_t per_group = grid.seeds.size();
  const std::size_t trial_rows = rows.size();
  for (std::size_t start = 0; start < trial_rows; start += per_group) {
    std::vector<const SweepRow*> ok;
    for (std::size_t i = start; i < start + per_group; ++i) {
      if (rows[i].error.empty()) ok.push_back(&rows[i]);
    }
    SweepRow mean = rows[start];
    mean.kind = RowKind::kMean;
    mean.seed.reset();
    mean.error = ok.empty() ? "all trials failed" : "";
    SweepRow sd = mean;
    sd.kind = RowKind::kStddev;
    auto column = [&](double SweepRow::*field, SweepRow& m, SweepRow& s) {
      std::vector<double> v;
      v.reserve(ok.size());
      for (const SweepRow* r : ok) v.push_back(r->*field);
      m.*field = Mean(v);
      s.*field = Stddev(v);
    };
    for (auto field :
         {&SweepRow::mse_db, &SweepRow::total_bits, &SweepRow::residual_bits,
          &SweepRow::window_bits, &SweepRow::flag_bits,
          &SweepRow::overhead_percent, &SweepRow::avg_windows,
          &SweepRow::firing_count, &SweepRow::oversampling_factor}) {
      column(field, mean, sd);
    }
    rows.push_back(mean);
    rows.push_back(sd);
  }
  return rows;
}

double InterpolateMse(std::span<const double> bits_per_sample,
                      std::span<const double> mse_db, double query) {
  Require(bits_per_sample.size() == mse_db.size() && !mse_db.empty(),
          ErrorCode::kInvalidArgument, "curve columns must match and be non-empty");
  if (query <= bits_per_sample.front()) return mse_db.front();
  if (query >= bits_per_sample.back()) return mse_db.back();
  const auto it =
      std::upper_bound(bits_per_sample.begin(), bits_per_sample.end(), query);
  const std::size_t hi = static_cast<std::size_t>(it - bits_per_sample.begin());
  const std::size_t lo = hi - 1;
  const double w = (query - bits_per_sample[lo]) /
                   (bits_per_sample[hi] - bits_per_sample[lo]);
  return mse_db[lo] + w * (mse_db[hi] - mse_db[lo]);
}

std::vector<CompressionRow> CompressionTable(const CompressionConfig& config, unsigned workers) {
  Require(!config.seeds.empty() && !config.cif_bits.empty(),
          ErrorCode::kInvalidArgument, "table needs seeds and bit rows");
  const std::array<Scheme, 3> schemes{Scheme::kUniform, Scheme::kCcif,
                                      Scheme::kDcif};
  std::vector<TrialConfig> configs;
  for (std::uint32_t bits : config.cif_bits) {
    for (Scheme scheme : schemes) {
      for (std::uint64_t seed : config.seeds) {
        TrialConfig c = config.base;
        c.scheme = scheme;
        c.seed = seed;
        c.bits = scheme == Scheme::kUniform ? bits + config.bit_gap : bits;
        configs.push_back(c);
      }
    }
  }
  const std::vector<TrialMetrics> results = RunTrials(configs, workers);

  std::vector<CompressionRow> table;
  const std::size_t seeds = config.seeds.size();
  std::size_t at = 0;
  for (std::uint32_t bits : config.cif_bits) {
    struct Summary {
      double mse = 0.0, total = 0.0, overhead = 0.0, windows = 0.0;
    };
    std::array<Summary, 3> s{};
    for (std::size_t k = 0; k < schemes.size(); ++k) {
      for (std::size_t j = 0; j < seeds; ++j, ++at) {
        const TrialMetrics& m = results[at];
        s[k].mse += m.mse_db / seeds;
        s[k].total += static_cast<double>(m.total_bits) / seeds;
        s[k].overhead += m.overhead_percent / seeds;
        s[k].windows += m.avg_windows / seeds;
      }
    }
    CompressionRow row;
    row.cif_bits = bits;
    row.if_bits = bits + config.bit_gap;
    row.if_mse_db = s[0].mse;
    row.ccif_mse_db = s[1].mse;
    row.dcif_mse_db = s[2].mse;
    row.ccif_compression_percent = 100.0 * (1.0 - s[1].total / s[0].total);
    row.dcif_compression_percent = 100.0 * (1.0 - s[2].total / s[0].total);
    row.ccif_overhead_percent = s[1].overhead;
    row.dcif_overhead_percent = s[2].overhead;
    row.dcif_avg_windows = s[2].windows;
    table.push_back(row);
  }
  return table;
}

namespace {

std::string Fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string GroupLabel(const SweepRow& r) {
  return std::string(ToString(r.scheme)) + " " + std::string(ToString(r.bias_mode)) +
         " " + Fixed(r.omega_hz, 0) + "Hz " + std::to_string(r.bits) + "b";
}

}  // namespace

std::vector<CheckResult> CheckMatchedBitGap(std::span<const SweepRow> rows) {
  using Key = std::pair<BiasMode, double>;
  std::map<Key, std::vector<const SweepRow*>> baseline;
  for (const SweepRow& r : rows) {
    if (r.kind == RowKind::kMean && r.error.empty() &&
        r.scheme == Scheme::kUniform && r.firing_count > 0) {
      baseline[{r.bias_mode, r.omega_hz}].push_back(&r);
    }
  }
  std::vector<CheckResult> out;
  for (const SweepRow& r : rows) {
    if (r.kind != RowKind::kMean || r.scheme == Scheme::kUniform ||
        r.bits < kGapMinBits || r.bits > kGapMaxBits) {
      continue;
    }
    CheckResult check{"matched-bit gap " + GroupLabel(r), false, ""};
    auto it = baseline.find({r.bias_mode, r.omega_hz});
    if (!r.error.empty()) {
      check.detail = "trials failed: " + r.error;
    } else if (it == baseline.end() || it->second.size() < 2) {
      check.detail = "no baseline curve for this group";
    } else {
      std::vector<const SweepRow*> curve = it->second;
      std::sort(curve.begin(), curve.end(), [](auto* a, auto* b) {
        return a->total_bits / a->firing_count < b->total_bits / b->firing_count;
      });
      std::vector<double> bps, mse;
      for (const SweepRow* b : curve) {
        bps.push_back(b->total_bits / b->firing_count);
        mse.push_back(b->mse_db);
      }
      const double query = r.total_bits / r.firing_count;
      if (query < bps.front() || query > bps.back()) {
        check.detail = "baseline does not cover " + Fixed(query) + " bits/sample";
      } else {
        const double gap = r.mse_db - InterpolateMse(bps, mse, query);
        check.passed = gap >= kGapLowerDb && gap <= kGapUpperDb;
        check.detail = "gap " + Fixed(gap) + " dB at " + Fixed(query, 3) +
                       " bits/sample (band [" + Fixed(kGapLowerDb, 0) + ", " +
                       Fixed(kGapUpperDb, 0) + "])";
      }
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<CheckResult> CheckSchemeOrdering(std::span<const SweepRow> rows) {
  using Key = std::tuple<BiasMode, double, std::uint32_t>;
  std::map<Key, const SweepRow*> dcif;
  for (const SweepRow& r : rows) {
    if (r.kind == RowKind::kMean && r.scheme == Scheme::kDcif) {
      dcif[{r.bias_mode, r.omega_hz, r.bits}] = &r;
    }
  }
  std::vector<CheckResult> out;
  for (const SweepRow& r : rows) {
    if (r.kind != RowKind::kMean || r.scheme != Scheme::kCcif) continue;
    auto it = dcif.find({r.bias_mode, r.omega_hz, r.bits});
    if (it == dcif.end()) continue;
    CheckResult check{"ordering ccif<=dcif " + std::string(ToString(r.bias_mode)) +
                          " " + Fixed(r.omega_hz, 0) + "Hz " +
                          std::to_string(r.bits) + "b",
                      false, ""};
    if (!r.error.empty() || !it->second->error.empty()) {
      check.detail = "trials failed";
    } else {
      const double diff = r.mse_db - it->second->mse_db;
      check.passed = diff <= kOrderingAllowanceDb;
      check.detail = "ccif " + Fixed(r.mse_db) + " dB, dcif " +
                     Fixed(it->second->mse_db) + " dB, diff " + Fixed(diff);
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<CheckResult> CheckCompressionTable(std::span<const CompressionRow> rows) {
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CompressionRow& r = rows[i];
    const std::string tag = "row " + std::to_string(r.cif_bits) + "/" +
                            std::to_string(r.if_bits) + " ";
    for (auto [name, mse, comp, overhead] :
         {std::tuple{"ccif", r.ccif_mse_db, r.ccif_compression_percent,
                     r.ccif_overhead_percent},
          std::tuple{"dcif", r.dcif_mse_db, r.dcif_compression_percent,
                     r.dcif_overhead_percent}}) {
      const double diff = mse - r.if_mse_db;
      out.push_back({tag + name + " matched mse", std::abs(diff) <= kMatchToleranceDb,
                     "diff " + Fixed(diff) + " dB"});
      out.push_back({tag + name + " compression",
                     comp >= kCompressionLowPercent && comp <= kCompressionHighPercent,
                     Fixed(comp) + "%"});
      out.push_back({tag + name + " overhead", overhead <= kOverheadCeilingPercent,
                     Fixed(overhead) + "%"});
      if (i > 0) {
        const double prev = std::string_view(name) == "ccif"
                                ? rows[i - 1].ccif_compression_percent
                                : rows[i - 1].dcif_compression_percent;
        out.push_back({tag + name + " compression decreasing", comp < prev,
                       Fixed(prev) + "% -> " + Fixed(comp) + "%"});
      }
    }
    out.push_back({tag + "dcif average windows",
                   r.dcif_avg_windows >= kMinAverageWindows &&
                       r.dcif_avg_windows <= kMaxAverageWindows,
                   "L " + Fixed(r.dcif_avg_windows)});
    const double order = r.ccif_mse_db - r.dcif_mse_db;
    out.push_back({tag + "ordering ccif<=dcif", order <= kOrderingAllowanceDb,
                   "diff " + Fixed(order) + " dB"});
  }
  return out;
}

std::vector<std::string> SweepCsvColumns() {
  return {"kind",          "scheme",        "bias_mode",        "omega_hz",
          "bits",          "seed",          "mse_db",           "total_bits",
          "residual_bits", "window_bits",   "flag_bits",        "overhead_percent",
          "avg_windows",   "firing_count",  "oversampling_factor", "error"};
}

void WriteSweepCsv(const std::filesystem::path& path,
                   const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  const auto columns = SweepCsvColumns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const SweepRow& r : rows) {
    out << ToString(r.kind) << ',' << ToString(r.scheme) << ','
        << ToString(r.bias_mode) << ',' << FormatDouble(r.omega_hz) << ','
        << r.bits << ',' << (r.seed ? std::to_string(*r.seed) : "") << ','
        << FormatDouble(r.mse_db) << ',' << FormatDouble(r.total_bits) << ','
        << FormatDouble(r.residual_bits) << ',' << FormatDouble(r.window_bits)
        << ',' << FormatDouble(r.flag_bits) << ','
        << FormatDouble(r.overhead_percent) << ','
        << FormatDouble(r.avg_windows) << ',' << FormatDouble(r.firing_count)
        << ',' << FormatDouble(r.oversampling_factor) << ','
        << Sanitize(r.error) << '\n';
  }
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<SweepRow> ReadSweepCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kIo, path.string() + ": empty file");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != SweepCsvColumns().size()) {
      Fail(ErrorCode::kIo, path.string() + ": wrong column count");
    }
    SweepRow r;
    if (f[0] == "trial") r.kind = RowKind::kTrial;
    else if (f[0] == "mean") r.kind = RowKind::kMean;
    else if (f[0] == "stddev") r.kind = RowKind::kStddev;
    else Fail(ErrorCode::kIo, path.string() + ": unknown row kind " + f[0]);
    r.scheme = ParseScheme(f[1]);
    r.bias_mode = ParseBiasMode(f[2]);
    r.omega_hz = ParseDouble(f[3]);
    r.bits = static_cast<std::uint32_t>(std::stoul(f[4]));
    if (!f[5].empty()) r.seed = std::stoull(f[5]);
    r.mse_db = ParseDouble(f[6]);
    r.total_bits = ParseDouble(f[7]);
    r.residual_bits = ParseDouble(f[8]);
    r.window_bits = ParseDouble(f[9]);
    r.flag_bits = ParseDouble(f[10]);
    r.overhead_percent = ParseDouble(f[11]);
    r.avg_windows = ParseDouble(f[12]);
    r.firing_count = ParseDouble(f[13]);
    r.oversampling_factor = ParseDouble(f[14]);
    r.error = f[15];
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteCompressionCsv(const std::filesystem::path& path,
                    const std::vector<CompressionRow>& rows) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << "cif_bits,if_bits,if_mse_db,ccif_mse_db,dcif_mse_db,"
         "ccif_compression_percent,dcif_compression_percent,"
         "ccif_overhead_percent,dcif_overhead_percent,dcif_avg_windows\n";
  for (const CompressionRow& r : rows) {
    out << r.cif_bits << ',' << r.if_bits << ',' << FormatDouble(r.if_mse_db)
        << ',' << FormatDouble(r.ccif_mse_db) << ','
        << FormatDouble(r.dcif_mse_db) << ','
        << FormatDouble(r.ccif_compression_percent) << ','
        << FormatDouble(r.dcif_compression_percent) << ','
        << FormatDouble(r.ccif_overhead_percent) << ','
        << FormatDouble(r.dcif_overhead_percent) << ','
        << FormatDouble(r.dcif_avg_windows) << '\n';
  }
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

void WritePlotScript(const std::filesystem::path& script_path,
                     const std::filesystem::path& csv_path) {
  std::ofstream out(script_path);
  if (!out) {
    Fail(ErrorCode::kIo, "cannot open " + script_path.string() + " for writing");
  }
  out << R"py(#!/usr/bin/env python3
# MSE versus quantizer bits, one panel per bias mode, one curve per
# (scheme, bandwidth). Generated by ciftem.
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = sys.argv[1] if len(sys.argv) > 1 else )py"
      << '"' << csv_path.generic_string() << '"' << R"py(
OUT = sys.argv[2] if len(sys.argv) > 2 else CSV.rsplit(".", 1)[0] + ".png"

curves = defaultdict(list)
with open(CSV, newline="") as fh:
    for row in csv.DictReader(fh):
        if row["kind"] != "mean" or row["error"]:
            continue
        key = (row["bias_mode"], row["scheme"], float(row["omega_hz"]))
        curves[key].append((int(row["bits"]), float(row["mse_db"])))

modes = sorted({k[0] for k in curves})
fig, axes = plt.subplots(1, max(1, len(modes)), figsize=(6 * max(1, len(modes)), 4.5),
                         squeeze=False)
for ax, mode in zip(axes[0], modes):
    for (m, scheme, f), pts in sorted(curves.items()):
        if m != mode:
            continue
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o",
                label=f"{scheme} {f:g} Hz")
    ax.set_title(f"bias mode: {mode}")
    ax.set_xlabel("quantizer bits (log2 K)")
    ax.set_ylabel("MSE [dB]")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT, dpi=150)
print(OUT)
)py";
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write failed: " + script_path.string());
}

}  // namespace ciftem::bench
