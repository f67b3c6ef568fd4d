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

#include "ciftem/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "ciftem/error.hpp"
#include "gauss.hpp"

namespace ciftem {
namespace {

// sin(pi d) / (pi d) for an offset d in grid spacings. Integer offsets are
// exact zeros (or one at d = 0); the phase is reduced mod 2 before sin.
double GridSinc(double d) {
  if (d == std::nearbyint(d)) return d == 0.0 ? 1.0 : 0.0;
  const double r = d - 2.0 * std::nearbyint(0.5 * d);
  return std::sin(kPi * r) / (kPi * d);
}

// Uniform double in [-1, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double SymmetricUniform(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

BandlimitedSignal::BandlimitedSignal(double omega,
                                     std::vector<double> coefficients,
                                     double duration)
    : omega_(omega), duration_(duration), coefficients_(std::move(coefficients)) {
  Require(std::isfinite(omega) && omega > 0.0, ErrorCode::kInvalidArgument,
          "Omega must be positive");
  Require(std::isfinite(duration) && duration > 0.0,
          ErrorCode::kInvalidArgument, "support duration must be positive");
  energy_ = SignalEnergy(*this);
}

double BandlimitedSignal::Evaluate(double t) const {
  double u = t / grid_spacing();
  // k * h / h can miss k by an ulp; snap so grid points interpolate exactly.
  const double nearest = std::nearbyint(u);
  if (std::abs(u - nearest) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   std::abs(nearest)) {
    u = nearest;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (coefficients_[k] == 0.0) continue;
    sum += coefficients_[k] * GridSinc(u - static_cast<double>(k));
  }
  return sum;
}

double BandlimitedSignal::Integrate(double a, double b) const {
  return detail::AdaptiveGauss([this](double t) { return Evaluate(t); }, a, b,
                               1e-15, 12);
}

BandlimitedSignal BandlimitedSignal::Scaled(double factor) const {
  std::vector<double> scaled(coefficients_);
  for (double& c : scaled) c *= factor;
  return BandlimitedSignal(omega_, std::move(scaled), duration_);
}

double SignalEnergy(const BandlimitedSignal& signal) {
  const double panel = signal.grid_spacing() / 4.0;
  const auto panels = static_cast<std::size_t>(
      std::ceil(signal.duration() / panel - 1e-9));
  const double width = signal.duration() / static_cast<double>(panels);
  const auto& rule = detail::GaussLegendre16();
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = static_cast<double>(p) * width;
    const double mid = lo + 0.5 * width;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = signal.Evaluate(mid + 0.5 * width * rule.nodes[i]);
      acc += rule.weights[i] * x * x;
    }
    total += 0.5 * width * acc;
  }
  return total;
}

BandlimitedSignal Generate(double omega, double energy, double duration,
                           std::uint64_t seed) {
  Require(std::isfinite(omega) && omega > 0.0, ErrorCode::kInvalidArgument,
          "Omega must be positive");
  Require(energy >= 0.0, ErrorCode::kInvalidArgument,
          "energy must be non-negative");
  const double h = kPi / omega;
  Require(duration >= kMinSupportSpacings * h * (1.0 - 1e-12),
          ErrorCode::kInvalidArgument,
          "support must span at least 10 grid spacings");

  const auto count =
      static_cast<std::size_t>(std::llround(duration / h)) + 1;
  std::vector<double> coefficients(count, 0.0);
  if (energy == 0.0) return BandlimitedSignal(omega, coefficients, duration);

  std::mt19937_64 rng(seed);
  for (double& c : coefficients) c = SymmetricUniform(rng);
  const auto taper = static_cast<std::size_t>(kTaperLength);
  for (std::size_t i = 0; i < taper && i < count; ++i) {
    const double ramp = static_cast<double>(i + 1) / (kTaperLength + 1);
    coefficients[i] *= ramp;
    coefficients[count - 1 - i] *= ramp;
  }

  const BandlimitedSignal raw(omega, coefficients, duration);
  if (raw.energy() <= 0.0) return raw;
  return raw.Scaled(std::sqrt(energy / raw.energy()));
}

}  // namespace ciftem
