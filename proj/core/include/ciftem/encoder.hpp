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
#include <functional>
#include <vector>

#include "ciftem/params.hpp"
#include "ciftem/signal.hpp"

namespace ciftem {

/// Output of the integrate-and-fire encoder: the first firing time and the
/// differences T_n = t_{n+1} - t_n of the following ones.
struct FiringSequence {
  double t0 = 0.0;
  std::vector<double> intervals;
  TemParams params;

  std::size_t firing_count() const { return intervals.size() + 1; }
  std::vector<double> times() const;
};

/// Amplitude measurements y_n = -b T_n + kappa delta, each equal to the
/// integral of x over [t_n, t_{n+1}].
struct MeasurementSeq {
  std::vector<double> values;
};

struct EncoderOptions {
  /// Absolute tolerance on each located crossing time (seconds).
  double time_tolerance = 1e-12;
  /// Relative tolerance of the adaptive integral.
  double integral_tolerance = 1e-14;
};

/// Integrates (b + x(t)) / kappa from t_start, fires whenever the integral
/// reaches delta and resets. Firings after t_end are discarded.
/// Any input the sampler can integrate. `integrate`, when set, returns the
/// integral of x over [a, b]; otherwise the encoder integrates `evaluate`
/// adaptively. `amplitude_bound` must bound |x| on the encoded span.
struct SignalModel {
  std::function<double(double)> evaluate;
  std::function<double(double, double)> integrate;
  double amplitude_bound = 0.0;
};

FiringSequence Encode(const SignalModel& signal, const TemParams& params,
                      double t_start, double t_end,
                      const EncoderOptions& options = {});
FiringSequence Encode(const BandlimitedSignal& signal, const TemParams& params,
                      double t_start, double t_end,
                      const EncoderOptions& options = {});

MeasurementSeq Measurements(const FiringSequence& firings);

/// Firing rate over the recorded span divided by the Nyquist rate Omega/pi.
double OversamplingFactor(const FiringSequence& firings, double omega);

}  // namespace ciftem
