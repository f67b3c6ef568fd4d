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

// ciftem command line: encode, decode, trial, sweep, compression.
//
// Exit codes: 0 success, 1 a --check assertion failed, 2 usage error,
// 3 library error.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ciftem/codec.hpp"
#include "ciftem/csv.hpp"
#include "ciftem/decoder.hpp"
#include "ciftem/encoder.hpp"
#include "ciftem/error.hpp"
#include "ciftem/experiment.hpp"
#include "ciftem/params.hpp"
#include "ciftem/signal.hpp"
#include "ciftem/stream_io.hpp"

namespace fs = std::filesystem;
using ciftem::bench::BiasMode;
using ciftem::bench::CheckResult;
using ciftem::bench::TrialConfig;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLibrary = 3;
constexpr std::uint64_t kDeskSeeds = 20;
constexpr std::uint64_t kFullSeeds = 100;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double ToRadians(double value, const std::string& unit) {
  return unit == "rad" ? value : ciftem::OmegaFromHz(value);
}

// Flags shared by every subcommand that builds a TrialConfig.
struct TrialFlags {
  double omega = 80.0;
  std::string omega_unit = "hz";
  double energy = ciftem::bench::kDefaultEnergy;
  double support = ciftem::bench::kDefaultSupportSpacings;
  std::uint64_t seed = 0;
  std::string bias_mode = "fixed";
  double bias = ciftem::bench::kDefaultFixedBias;
  double alpha = ciftem::bench::kDefaultAlpha;
  double scale = ciftem::bench::kDefaultScale;
  double threshold = ciftem::bench::kDefaultThreshold;
  std::string scheme = "iftem";
  std::uint32_t bits = 8;
  std::optional<std::uint64_t> levels;
  std::optional<std::uint32_t> windows;
  std::uint32_t max_windows = 64;
  std::uint32_t window_length = 40;
  std::uint32_t update_every = 5;
  std::uint32_t initial_windows = 4;
  std::string accounting = "compact";
  bool unquantized = false;
  double trim = 0.1;
  double regularization = 1e-8;

  void Register(CLI::App* app) {
    app->add_option("--omega", omega, "Bandwidth Omega (see --omega-unit)")
        ->capture_default_str();
    app->add_option("--omega-unit", omega_unit, "Unit of --omega")
        ->check(CLI::IsMember({"hz", "rad"}))
        ->capture_default_str();
    app->add_option("--energy", energy, "Signal energy E")->capture_default_str();
    app->add_option("--support", support,
                    "Signal support in Nyquist spacings pi/Omega")
        ->capture_default_str();
    app->add_option("--seed", seed, "Signal generator seed")->capture_default_str();
    app->add_option("--bias-mode", bias_mode, "fixed (b) or alpha (b = alpha c)")
        ->check(CLI::IsMember({"fixed", "alpha"}))
        ->capture_default_str();
    app->add_option("--bias", bias, "Bias b in fixed mode")->capture_default_str();
    app->add_option("--alpha", alpha, "Bias ratio in alpha mode")
        ->capture_default_str();
    app->add_option("--kappa", scale, "Integrator scale kappa")
        ->capture_default_str();
    app->add_option("--delta", threshold, "Firing threshold delta")
        ->capture_default_str();
    app->add_option("--scheme", scheme, "iftem, ccif or dcif")
        ->check(CLI::IsMember({"iftem", "uniform", "ccif", "dcif"}))
        ->capture_default_str();
    app->add_option("--bits", bits, "Quantizer bits log2(K)")
        ->check(CLI::Range(1, 30))
        ->capture_default_str();
    app->add_option("--levels", levels,
                    "Quantizer levels K (power of two; overrides --bits)");
    app->add_option("--windows", windows, "Force the ccif window count L")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-windows", max_windows, "Upper clamp on L")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--window-length", window_length,
                    "dcif statistics window m")
        ->capture_default_str();
    app->add_option("--update-every", update_every, "dcif update period l")
        ->capture_default_str();
    app->add_option("--initial-windows", initial_windows, "dcif initial L")
        ->capture_default_str();
    app->add_option("--accounting", accounting, "compact or self-delimiting")
        ->check(CLI::IsMember({"compact", "self-delimiting"}))
        ->capture_default_str();
    app->add_flag("--unquantized", unquantized,
                  "Reconstruct from the exact intervals");
    app->add_option("--trim", trim, "Fraction trimmed at each end for MSE")
        ->capture_default_str();
    app->add_option("--regularization", regularization,
                    "Relative ridge weight of the solver")
        ->capture_default_str();
  }

  TrialConfig Resolve() const {
    TrialConfig c;
    c.omega = ToRadians(omega, omega_unit);
    c.energy = energy;
    c.support_spacings = support;
    c.seed = seed;
    c.bias_mode = ciftem::bench::ParseBiasMode(bias_mode);
    c.fixed_bias = bias;
    c.alpha = alpha;
    c.scale = scale;
    c.threshold = threshold;
    c.scheme = ciftem::ParseScheme(scheme);
    c.bits = bits;
    if (levels) {
      if (*levels < 2 || std::popcount(*levels) != 1) {
        throw UsageError("--levels must be a power of two >= 2, got " +
                         std::to_string(*levels));
      }
      c.bits = static_cast<std::uint32_t>(std::countr_zero(*levels));
    }
    c.forced_windows = windows;
    c.max_windows = max_windows;
    c.estimator.window_length = window_length;
    c.estimator.update_every = update_every;
    c.estimator.initial_windows = initial_windows;
    c.estimator.max_windows = max_windows;
    c.accounting = ciftem::ParseAccounting(accounting);
    c.unquantized = unquantized;
    c.trim_fraction = trim;
    c.regularization = regularization;
    return c;
  }
};

fs::path DefaultOutDir() {
  if (const char* env = std::getenv("CIFTEM_OUT_DIR"); env && *env) return env;
  return "ciftem-out";
}

fs::path PrepareOutDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    ciftem::Fail(ciftem::ErrorCode::kIo,
                 "cannot create " + dir.string() + ": " + ec.message());
  }
  return dir;
}

// Dumps global options and the active subcommand's options, with the
// effective output directory, in the same key=value form --config reads.
void WriteResolvedConfig(const CLI::App& app, const std::string& subcommand,
                         const fs::path& out_dir) {
  const fs::path path = out_dir / (subcommand + ".config.ini");
  std::ofstream out(path);
  if (!out) ciftem::Fail(ciftem::ErrorCode::kIo, "cannot write " + path.string());
  std::istringstream all(app.config_to_str(true, false));
  const std::string prefix = subcommand + ".";
  for (std::string line; std::getline(all, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    if (line.substr(eq + 1) == "\"\"" || key == "config") continue;
    if (key == "out-dir") {
      out << "out-dir=\"" << out_dir.generic_string() << "\"\n";
    } else if (key.find('.') == std::string::npos || key.starts_with(prefix)) {
      out << line << '\n';
    }
  }
  out.flush();
  if (!out) ciftem::Fail(ciftem::ErrorCode::kIo, "write failed: " + path.string());
}

int Report(const std::vector<CheckResult>& checks) {
  std::size_t failed = 0;
  for (const CheckResult& c : checks) {
    std::printf("%s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    if (!c.passed) ++failed;
  }
  std::printf("%zu/%zu checks passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : kExitCheckFailed;
}

std::vector<std::uint64_t> SeedRange(std::uint64_t base, std::uint64_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), base);
  return seeds;
}

void PrintMetrics(const ciftem::bench::TrialMetrics& m) {
  std::printf("mse_db              %.4f\n", m.mse_db);
  std::printf("firing_count        %llu\n",
              static_cast<unsigned long long>(m.firing_count));
  std::printf("oversampling        %.4f\n", m.oversampling_factor);
  std::printf("density_satisfied   %s\n", m.density_satisfied ? "yes" : "no");
  std::printf("total_bits          %llu\n",
              static_cast<unsigned long long>(m.total_bits));
  std::printf("residual_bits       %llu\n",
              static_cast<unsigned long long>(m.residual_bits));
  std::printf("window_bits         %llu\n",
              static_cast<unsigned long long>(m.window_bits));
  std::printf("flag_bits           %llu\n",
              static_cast<unsigned long long>(m.flag_bits));
  std::printf("overhead_percent    %.4f\n", m.overhead_percent);
  std::printf("avg_windows         %.4f\n", m.avg_windows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrate-and-fire time encoding with windowed interval compression"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file");
  fs::path out_dir = DefaultOutDir();
  app.add_option("--out-dir", out_dir,
                 "Output directory (default: $CIFTEM_OUT_DIR or ./ciftem-out)");
  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads (0 = hardware)")
      ->capture_default_str();

  // encode
  TrialFlags enc;
  fs::path enc_signal, enc_output;
  std::string enc_framing = "self-delimiting";
  auto* encode = app.add_subcommand("encode", "Encode a signal into a stream file");
  enc.Register(encode);
  encode->add_option("--signal", enc_signal,
                     "Signal CSV to encode instead of a generated one")
      ->check(CLI::ExistingFile);
  encode->add_option("--output", enc_output, "Stream file (default: out/stream.ctem)");
  encode->add_option("--framing", enc_framing, "Stream framing")
      ->check(CLI::IsMember({"compact", "self-delimiting"}))
      ->capture_default_str();

  // decode
  fs::path dec_input, dec_output, dec_signal;
  std::optional<double> dec_omega;
  std::string dec_unit = "hz";
  auto* decode = app.add_subcommand("decode", "Decode a stream file to intervals");
  decode->add_option("input", dec_input, "Stream file")
      ->required()
      ->check(CLI::ExistingFile);
  decode->add_option("--output", dec_output,
                     "Intervals CSV (default: out/decoded_intervals.csv)");
  decode->add_option("--omega", dec_omega, "Reconstruct at this bandwidth");
  decode->add_option("--omega-unit", dec_unit, "Unit of --omega")
      ->check(CLI::IsMember({"hz", "rad"}))
      ->capture_default_str();
  decode->add_option("--signal", dec_signal,
                     "Reference signal CSV; reconstructs and reports MSE")
      ->check(CLI::ExistingFile);

  // trial
  TrialFlags tri;
  auto* trial = app.add_subcommand("trial", "Run one generate-encode-decode trial");
  tri.Register(trial);

  // sweep
  TrialFlags swp;
  std::vector<std::uint32_t> sweep_bits{6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::vector<double> sweep_omegas{5, 20, 40, 80};
  std::vector<std::string> sweep_schemes{"iftem", "ccif", "dcif"};
  std::vector<std::string> sweep_modes{"fixed", "alpha"};
  std::uint64_t sweep_seeds = kDeskSeeds;
  bool sweep_full = false, sweep_check = false;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over the grid");
  swp.Register(sweep);
  sweep->add_option("--bits-list", sweep_bits, "Quantizer bits to sweep")
      ->capture_default_str();
  sweep->add_option("--omegas", sweep_omegas, "Bandwidths (unit: --omega-unit)")
      ->capture_default_str();
  sweep->add_option("--schemes", sweep_schemes, "Schemes to sweep")
      ->check(CLI::IsMember({"iftem", "uniform", "ccif", "dcif"}))
      ->capture_default_str();
  sweep->add_option("--bias-modes", sweep_modes, "Bias modes to sweep")
      ->check(CLI::IsMember({"fixed", "alpha"}))
      ->capture_default_str();
  sweep->add_option("--seeds", sweep_seeds, "Seeds per grid point")
      ->capture_default_str();
  sweep->add_flag("--full", sweep_full, "Use 100 seeds per grid point");
  sweep->add_flag("--check", sweep_check,
                  "Check matched-bit gap and ccif/dcif ordering; exit 1 on failure");

  // compression
  TrialFlags tab;
  std::vector<std::uint32_t> table_bits{6, 7, 8, 9, 10, 11, 12, 13};
  std::uint32_t table_gap = 2;
  std::uint64_t table_seeds = kDeskSeeds;
  bool table_full = false, table_check = false;
  auto* compression =
      app.add_subcommand("compression", "Bit compression table, CIF at K-2 bits");
  tab.Register(compression);
  compression->add_option("--cif-bits", table_bits, "CIF quantizer bits per row")
      ->capture_default_str();
  compression->add_option("--bit-gap", table_gap, "Extra baseline bits")
      ->capture_default_str();
  compression->add_option("--seeds", table_seeds, "Seeds per row")->capture_default_str();
  compression->add_flag("--full", table_full, "Use 100 seeds per row");
  compression->add_flag("--check", table_check,
                   "Check the table against the acceptance bands; exit 1 on failure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) {
      const TrialConfig cfg = enc.Resolve();
      cfg.Validate();
      const fs::path dir = PrepareOutDir(out_dir);
      const ciftem::BandlimitedSignal signal =
          enc_signal.empty()
              ? ciftem::Generate(cfg.omega, cfg.energy, cfg.duration(), cfg.seed)
              : ciftem::ReadSignalCsv(enc_signal);
      const double c = ciftem::AmplitudeBound(signal.energy(), signal.omega());
      ciftem::TemParams params = cfg.params();
      if (cfg.bias_mode == BiasMode::kAlpha) {
        params = ciftem::TemParams::FromAlpha(cfg.alpha, c, cfg.scale, cfg.threshold);
      }
      const ciftem::TimeBounds bounds = ciftem::ComputeTimeBounds(params, c);
      const ciftem::FiringSequence firings =
          ciftem::Encode(signal, params, 0.0, signal.duration());
      const ciftem::CompressedStream stream =
          ciftem::bench::EncodeScheme(cfg, firings, bounds);
      const ciftem::Accounting framing = ciftem::ParseAccounting(enc_framing);
      const fs::path output = enc_output.empty() ? dir / "stream.ctem" : enc_output;
      ciftem::WriteStreamFile(output, stream, framing);
      ciftem::WriteSignalCsv(dir / "signal.csv", signal);
      ciftem::WriteFiringCsv(dir / "firings.csv", firings);
      WriteResolvedConfig(app, "encode", dir);
      const ciftem::BitReport bits = ciftem::BitCost(stream, framing);
      std::printf("wrote %s\n", output.string().c_str());
      std::printf("samples %zu, total bits %llu, overhead %.3f%%\n",
                  stream.records.size(),
                  static_cast<unsigned long long>(bits.total_bits),
                  bits.overhead_percent);
      return 0;
    }

    if (*decode) {
      const fs::path dir = PrepareOutDir(out_dir);
      const ciftem::CompressedStream stream = ciftem::ReadStreamFile(dec_input);
      const ciftem::DecodedStream decoded = ciftem::DecodeStream(stream);
      const fs::path output =
          dec_output.empty() ? dir / "decoded_intervals.csv" : dec_output;
      ciftem::WriteIntervalsCsv(output, decoded.intervals);
      std::printf("wrote %s (%zu intervals)\n", output.string().c_str(),
                  decoded.intervals.size());
      std::optional<ciftem::BandlimitedSignal> truth;
      if (!dec_signal.empty()) truth = ciftem::ReadSignalCsv(dec_signal);
      std::optional<double> omega;
      if (dec_omega) omega = ToRadians(*dec_omega, dec_unit);
      else if (truth) omega = truth->omega();
      if (omega) {
        ciftem::ReconstructionConfig rc = ciftem::ReconstructionConfig::ForBand(*omega);
        if (truth) rc.grid_end = truth->duration();
        const auto times = ciftem::FiringTimes(stream.header.t0, decoded.intervals);
        const ciftem::ReconstructedSignal rec =
            ciftem::Reconstruct(times, stream.header.params, rc);
        ciftem::WriteSeriesCsv(dir / "reconstruction.csv", rec.grid_times, rec.values);
        std::printf("wrote %s (rcond %.3e)\n",
                    (dir / "reconstruction.csv").string().c_str(),
                    rec.diagnostics.condition_estimate);
        if (truth) {
          const auto x = ciftem::SampleSignal(*truth, rec.grid_times);
          std::printf("mse_db %.4f\n", ciftem::MseDb(x, rec.values, rc.grid_spacing,
                                                     rc.trim_fraction));
        }
      }
      WriteResolvedConfig(app, "decode", dir);
      return 0;
    }

    if (*trial) {
      const TrialConfig cfg = tri.Resolve();
      const fs::path dir = PrepareOutDir(out_dir);
      const ciftem::bench::TrialArtifacts art = ciftem::bench::RunTrialDetailed(cfg);
      ciftem::WriteSignalCsv(dir / "signal.csv", art.signal);
      ciftem::WriteFiringCsv(dir / "firings.csv", art.firings);
      ciftem::WriteSeriesCsv(dir / "truth.csv", art.grid, art.truth);
      ciftem::WriteSeriesCsv(dir / "reconstruction.csv", art.grid,
                             art.reconstruction.values);
      WriteResolvedConfig(app, "trial", dir);
      PrintMetrics(art.metrics);
      return 0;
    }

    if (*sweep) {
      ciftem::bench::SweepGrid grid;
      grid.base = swp.Resolve();
      grid.bits = sweep_bits;
      for (double w : sweep_omegas) grid.omegas.push_back(ToRadians(w, swp.omega_unit));
      for (const auto& s : sweep_schemes) grid.schemes.push_back(ciftem::ParseScheme(s));
      for (const auto& m : sweep_modes) {
        grid.bias_modes.push_back(ciftem::bench::ParseBiasMode(m));
      }
      grid.seeds = SeedRange(swp.seed, sweep_full ? kFullSeeds : sweep_seeds);
      const fs::path dir = PrepareOutDir(out_dir);
      const auto rows = ciftem::bench::Sweep(grid, workers);
      ciftem::bench::WriteSweepCsv(dir / "sweep.csv", rows);
      ciftem::bench::WritePlotScript(dir / "plot_sweep.py", dir / "sweep.csv");
      WriteResolvedConfig(app, "sweep", dir);
      std::size_t failures = 0;
      for (const auto& r : rows) {
        if (r.kind == ciftem::bench::RowKind::kTrial && !r.error.empty()) ++failures;
      }
      std::printf("wrote %s (%zu rows, %zu failed trials)\n",
                  (dir / "sweep.csv").string().c_str(), rows.size(), failures);
      if (sweep_check) {
        auto checks = ciftem::bench::CheckMatchedBitGap(rows);
        auto order = ciftem::bench::CheckSchemeOrdering(rows);
        checks.insert(checks.end(), order.begin(), order.end());
        return Report(checks);
      }
      return 0;
    }

    if (*compression) {
      ciftem::bench::CompressionConfig tc;
      tc.base = tab.Resolve();
      tc.cif_bits = table_bits;
      tc.bit_gap = table_gap;
      tc.seeds = SeedRange(tab.seed, table_full ? kFullSeeds : table_seeds);
      const fs::path dir = PrepareOutDir(out_dir);
      const auto rows = ciftem::bench::CompressionTable(tc, workers);
      ciftem::bench::WriteCompressionCsv(dir / "compression.csv", rows);
      WriteResolvedConfig(app, "compression", dir);
      std::printf("%4s %4s %9s %9s %9s %8s %8s %8s %8s %6s\n", "CIF", "IF",
                  "IF dB", "CCIF dB", "DCIF dB", "CC %", "DC %", "CC ovh",
                  "DC ovh", "DC L");
      for (const auto& r : rows) {
        std::printf("%4u %4u %9.2f %9.2f %9.2f %8.2f %8.2f %8.2f %8.2f %6.2f\n",
                    r.cif_bits, r.if_bits, r.if_mse_db, r.ccif_mse_db,
                    r.dcif_mse_db, r.ccif_compression_percent,
                    r.dcif_compression_percent, r.ccif_overhead_percent,
                    r.dcif_overhead_percent, r.dcif_avg_windows);
      }
      if (table_check) return Report(ciftem::bench::CheckCompressionTable(rows));
      return 0;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ciftem::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n",
                 std::string(ciftem::ToString(e.code())).c_str(), e.what());
    return e.code() == ciftem::ErrorCode::kInvalidArgument ? kExitUsage
                                                           : kExitLibrary;
  }
  return 0;
}
