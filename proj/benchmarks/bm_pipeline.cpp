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


#include <benchmark/benchmark.h>

#include "ciftem/codec.hpp"
#include "ciftem/decoder.hpp"
#include "ciftem/encoder.hpp"
#include "ciftem/experiment.hpp"
#include "ciftem/params.hpp"
#include "ciftem/signal.hpp"
#include "ciftem/stream_io.hpp"

namespace {

using namespace ciftem;

struct Fixture {
  BandlimitedSignal signal;
  TemParams params;
  TimeBounds bounds;
  FiringSequence firings;
};

// Range argument is the bandwidth in Hz.
Fixture Make(double hz) {
  const double omega = OmegaFromHz(hz);
  Fixture f;
  f.signal = Generate(omega, bench::kDefaultEnergy, 12.0 * kPi / omega, 1);
  f.params = TemParams::FixedBias(bench::kDefaultFixedBias, bench::kDefaultScale,
                                  bench::kDefaultThreshold);
  f.bounds = ComputeTimeBounds(f.params, f.signal.spec().amplitude_bound);
  f.firings = Encode(f.signal, f.params, 0.0, f.signal.duration());
  return f;
}

void BM_Encode(benchmark::State& state) {
  const Fixture f = Make(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Encode(f.signal, f.params, 0.0, f.signal.duration()));
  }
  state.counters["firings"] = static_cast<double>(f.firings.intervals.size());
}
BENCHMARK(BM_Encode)->Arg(80)->Arg(20)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DcifEncode(benchmark::State& state) {
  const Fixture f = Make(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DcifEncode(f.firings, 1 << 9, EstimatorParams{}, f.bounds));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.firings.intervals.size()));
}
BENCHMARK(BM_DcifEncode)->Arg(80)->Arg(5);

void BM_DecodeStream(benchmark::State& state) {
  const Fixture f = Make(static_cast<double>(state.range(0)));
  const CompressedStream cs = DcifEncode(f.firings, 1 << 9, EstimatorParams{}, f.bounds);
  for (auto _ : state) benchmark::DoNotOptimize(DecodeStream(cs));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.firings.intervals.size()));
}
BENCHMARK(BM_DecodeStream)->Arg(80)->Arg(5);

void BM_SerializeRoundTrip(benchmark::State& state) {
  const Fixture f = Make(80);
  const CompressedStream cs = DcifEncode(f.firings, 1 << 9, EstimatorParams{}, f.bounds);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DeserializeStream(SerializeStream(cs, Accounting::kSelfDelimiting)));
  }
}
BENCHMARK(BM_SerializeRoundTrip);

void BM_Reconstruct(benchmark::State& state) {
  const Fixture f = Make(static_cast<double>(state.range(0)));
  const auto times = f.firings.times();
  ReconstructionConfig config = ReconstructionConfig::ForBand(f.signal.omega());
  config.grid_end = f.signal.duration();
  for (auto _ : state) benchmark::DoNotOptimize(Reconstruct(times, f.params, config));
  state.counters["firings"] = static_cast<double>(f.firings.intervals.size());
}
BENCHMARK(BM_Reconstruct)->Arg(80)->Arg(20)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Trial(benchmark::State& state) {
  bench::TrialConfig config;
  config.omega = OmegaFromHz(80);
  config.scheme = Scheme::kDcif;
  config.bits = 9;
  for (auto _ : state) benchmark::DoNotOptimize(bench::RunTrial(config));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
