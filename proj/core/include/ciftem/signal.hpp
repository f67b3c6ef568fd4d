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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ciftem/params.hpp"

namespace ciftem {

/// A 2*Omega-bandlimited signal x(t) = sum_k a_k sinc(Omega (t - k h) / pi)
/// with grid spacing h = pi/Omega, defined on the support [0, duration].
/// Immutable after construction.
class BandlimitedSignal {
 public:
  BandlimitedSignal() = default;
  BandlimitedSignal(double omega, std::vector<double> coefficients,
                    double duration);

  double omega() const { return omega_; }
  double grid_spacing() const { return kPi / omega_; }
  double duration() const { return duration_; }
  std::span<const double> coefficients() const { return coefficients_; }

  /// Energy recorded at construction (quadrature over the support).
  double energy() const { return energy_; }
  SignalSpec spec() const { return SignalSpec::Make(energy_, omega_); }

  double Evaluate(double t) const;

  /// Integral of x over [a, b] by adaptive Gauss-Legendre.
  double Integrate(double a, double b) const;

  BandlimitedSignal Scaled(double factor) const;

 private:
  double omega_ = 1.0;
  double duration_ = 0.0;
  std::vector<double> coefficients_;
  double energy_ = 0.0;
};

/// Composite 16-point Gauss-Legendre quadrature of x^2 over the support with
/// panels of a quarter grid spacing.
double SignalEnergy(const BandlimitedSignal& signal);

/// Shortest support `Generate` accepts, in grid spacings.
inline constexpr double kMinSupportSpacings = 10.0;
/// Coefficients linearly ramped at each end of a generated signal.
inline constexpr int kTaperLength = 5;

/// Random test signal: coefficients i.i.d. uniform in [-1, 1] on the grid
/// k*pi/Omega, k = 0..round(duration*Omega/pi), edge-tapered, then rescaled
/// so that SignalEnergy equals `energy`. Deterministic in `seed`.
BandlimitedSignal Generate(double omega, double energy, double duration,
                           std::uint64_t seed);

}  // namespace ciftem
