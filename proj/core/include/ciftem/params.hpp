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

// Sampler parameters and the closed-form quantities that follow from them:
// amplitude bound of the signal class, interval bounds, the density
// condition, and the quantizer step sizes of the uniform and windowed schemes.

#include <cstdint>
#include <optional>

namespace ciftem {

inline constexpr double kPi = 3.14159265358979323846;

/// Converts an ordinary frequency in hertz to the angular band edge used
/// throughout the library (rad/s).
constexpr double OmegaFromHz(double hz) { return 2.0 * kPi * hz; }
constexpr double HzFromOmega(double omega) { return omega / (2.0 * kPi); }

/// Integrate-and-fire sampler parameters {b, kappa, delta}.
struct TemParams {
  double bias = 0.0;       // b, amplitude units
  double scale = 0.0;      // kappa
  double threshold = 0.0;  // delta
  std::optional<double> alpha;  // set when bias was chosen as alpha * c

  double kappa_delta() const { return scale * threshold; }

  /// Throws kInvalidArgument unless kappa, delta, b are positive.
  void Validate() const;

  /// b = alpha * c. Requires alpha > 1 and c > 0.
  static TemParams FromAlpha(double alpha, double amplitude_bound,
                             double scale, double threshold);
  static TemParams FixedBias(double bias, double scale, double threshold);

  bool operator==(const TemParams&) const = default;
};

/// The 2*Omega-bandlimited, energy-E signal class.
struct SignalSpec {
  double omega = 0.0;   // rad/s
  double energy = 0.0;
  double amplitude_bound = 0.0;  // c = sqrt(E * Omega / pi)

  static SignalSpec Make(double energy, double omega);

  bool operator==(const SignalSpec&) const = default;
};

/// Dynamic range [dt_min, dt_max] that every inter-firing interval lies in.
struct TimeBounds {
  double dt_min = 0.0;
  double dt_max = 0.0;

  double range() const { return dt_max - dt_min; }
  bool operator==(const TimeBounds&) const = default;
};

double AmplitudeBound(double energy, double omega);

/// dt_min = kappa*delta/(b+c), dt_max = kappa*delta/(b-c). Throws
/// kInfeasibleSampler when b <= c.
TimeBounds ComputeTimeBounds(const TemParams& params, double amplitude_bound);

/// True iff dt_max < pi / Omega.
bool CheckDensity(const TemParams& params, double amplitude_bound,
                  double omega);

/// Uniform step of a K-level quantizer over the whole dynamic range,
/// evaluated from the alpha form kappa*delta/((alpha+1)(alpha-1)) * 2/(cK)
/// with alpha = b/c.
double IfTemStep(const TemParams& params, double amplitude_bound,
                 std::uint64_t levels);

/// Step of the K-level quantizer inside one of L equal windows.
double CcifStep(const TemParams& params, double amplitude_bound,
                std::uint64_t levels, std::uint64_t windows);

/// log2(K) for a power of two K; throws kInvalidArgument otherwise.
std::uint32_t BitsForLevels(std::uint64_t levels);

/// ceil(log2(n)) with CeilLog2(1) == 0.
std::uint32_t CeilLog2(std::uint64_t n);

}  // namespace ciftem
