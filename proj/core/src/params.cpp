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

#include "ciftem/params.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ciftem/error.hpp"

namespace ciftem {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInfeasibleSampler: return "infeasible-sampler";
    case ErrorCode::kInternalConsistency: return "internal-consistency";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kMalformedStream: return "malformed-stream";
    case ErrorCode::kCounterOverflow: return "counter-overflow";
    case ErrorCode::kReconstructionFailure: return "reconstruction-failure";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

void TemParams::Validate() const {
  Require(std::isfinite(bias) && bias > 0.0, ErrorCode::kInvalidArgument,
          "bias must be positive");
  Require(std::isfinite(scale) && scale > 0.0, ErrorCode::kInvalidArgument,
          "scale kappa must be positive");
  Require(std::isfinite(threshold) && threshold > 0.0,
          ErrorCode::kInvalidArgument, "threshold delta must be positive");
  if (alpha) {
    Require(*alpha > 1.0, ErrorCode::kInvalidArgument, "alpha must exceed 1");
  }
}

TemParams TemParams::FromAlpha(double alpha, double amplitude_bound,
                               double scale, double threshold) {
  Require(alpha > 1.0, ErrorCode::kInvalidArgument, "alpha must exceed 1");
  Require(amplitude_bound > 0.0, ErrorCode::kInvalidArgument,
          "alpha form needs a positive amplitude bound");
  TemParams p{alpha * amplitude_bound, scale, threshold, alpha};
  p.Validate();
  return p;
}

TemParams TemParams::FixedBias(double bias, double scale, double threshold) {
  TemParams p{bias, scale, threshold, std::nullopt};
  p.Validate();
  return p;
}

SignalSpec SignalSpec::Make(double energy, double omega) {
  return SignalSpec{omega, energy, AmplitudeBound(energy, omega)};
}

double AmplitudeBound(double energy, double omega) {
  Require(std::isfinite(omega) && omega > 0.0, ErrorCode::kInvalidArgument,
          "Omega must be positive");
  Require(energy >= 0.0, ErrorCode::kInvalidArgument,
          "energy must be non-negative");
  return std::sqrt(energy * omega / kPi);
}

TimeBounds ComputeTimeBounds(const TemParams& params, double amplitude_bound) {
  params.Validate();
  Require(amplitude_bound >= 0.0, ErrorCode::kInvalidArgument,
          "amplitude bound must be non-negative");
  if (!(params.bias > amplitude_bound)) {
    Fail(ErrorCode::kInfeasibleSampler,
         "bias " + std::to_string(params.bias) +
             " does not exceed amplitude bound " +
             std::to_string(amplitude_bound));
  }
  const double kd = params.kappa_delta();
  return TimeBounds{kd / (params.bias + amplitude_bound),
                    kd / (params.bias - amplitude_bound)};
}

bool CheckDensity(const TemParams& params, double amplitude_bound,
                  double omega) {
  const TimeBounds bounds = ComputeTimeBounds(params, amplitude_bound);
  Require(omega > 0.0, ErrorCode::kInvalidArgument, "Omega must be positive");
  return bounds.dt_max < kPi / omega;
}

double IfTemStep(const TemParams& params, double amplitude_bound,
                 std::uint64_t levels) {
  Require(levels >= 1, ErrorCode::kInvalidArgument, "K must be at least 1");
  ComputeTimeBounds(params, amplitude_bound);  // feasibility
  Require(amplitude_bound > 0.0, ErrorCode::kInvalidArgument,
          "step form needs a positive amplitude bound");
  const double alpha = params.bias / amplitude_bound;
  return params.kappa_delta() / ((alpha + 1.0) * (alpha - 1.0)) * 2.0 /
         (amplitude_bound * static_cast<double>(levels));
}

double CcifStep(const TemParams& params, double amplitude_bound,
                std::uint64_t levels, std::uint64_t windows) {
  Require(windows >= 1, ErrorCode::kInvalidArgument, "L must be at least 1");
  Require(levels >= 1, ErrorCode::kInvalidArgument, "K must be at least 1");
  ComputeTimeBounds(params, amplitude_bound);
  Require(amplitude_bound > 0.0, ErrorCode::kInvalidArgument,
          "step form needs a positive amplitude bound");
  const double alpha = params.bias / amplitude_bound;
  return params.kappa_delta() / ((alpha - 1.0) * (alpha + 1.0)) * 2.0 /
         (amplitude_bound * static_cast<double>(windows) *
          static_cast<double>(levels));
}

std::uint32_t BitsForLevels(std::uint64_t levels) {
  Require(levels >= 1 && std::has_single_bit(levels),
          ErrorCode::kInvalidArgument, "K must be a power of two");
  return static_cast<std::uint32_t>(std::countr_zero(levels));
}

std::uint32_t CeilLog2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

}  // namespace ciftem
