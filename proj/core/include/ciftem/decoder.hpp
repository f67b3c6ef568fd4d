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
#include <span>
#include <vector>

#include "ciftem/params.hpp"
#include "ciftem/signal.hpp"

namespace ciftem {

struct ReconstructionConfig {
  double omega = 0.0;         // rad/s, cutoff of the lowpass kernel
  double grid_spacing = 0.0;  // output grid; must be <= pi / (4 Omega)
  double regularization = 1e-8;  // relative to the mean diagonal of A^T A
  std::size_t quadrature_points = 16;  // Gauss-Legendre nodes per interval
  double trim_fraction = 0.1;
  /// Output grid span; defaults to the first..last firing time when unset
  /// (grid_end <= grid_begin).
  double grid_begin = 0.0;
  double grid_end = 0.0;

  void Validate() const;
  /// Defaults for a given band: spacing pi/(16 Omega), other fields as above.
  static ReconstructionConfig ForBand(double omega);
};

struct SolverDiagnostics {
  double residual_norm = 0.0;      // ||A c - y||
  double condition_estimate = 0.0;  // 1 / rcond of the regularized system
  double regularization = 0.0;      // absolute ridge weight used
  bool density_satisfied = true;
};

/// x_hat(t) = sum_k c_k g(t - s_k), g(t) = sin(Omega t)/(Omega t), centers at
/// the interval midpoints.
class ReconstructedSignal {
 public:
  ReconstructedSignal() = default;
  ReconstructedSignal(double omega, std::vector<double> centers,
                      std::vector<double> weights);

  double Evaluate(double t) const;
  std::vector<double> EvaluateOn(std::span<const double> times) const;

  std::vector<double> grid_times;
  std::vector<double> values;
  SolverDiagnostics diagnostics;

  std::span<const double> centers() const { return centers_; }
  std::span<const double> weights() const { return weights_; }

 private:
  double omega_ = 1.0;
  std::vector<double> centers_;
  std::vector<double> weights_;
};

/// t_0 = t0, t_{n+1} = t_n + T_n.
std::vector<double> FiringTimes(double t0, std::span<const double> intervals);

/// Ridge least squares on the measurements y_n = -b (t_{n+1}-t_n) + kappa delta.
/// Throws kInsufficientData for fewer than 3 firings and
/// kReconstructionFailure when the solve breaks down.
ReconstructedSignal Reconstruct(std::span<const double> firing_times,
                                const TemParams& params,
                                const ReconstructionConfig& config);

/// Uniform grid of `spacing` covering [begin, end].
std::vector<double> UniformGrid(double begin, double end, double spacing);

inline constexpr double kMseFloorDb = -200.0;

/// 20 log10 of the L2 norm of x - x_hat over the grid after dropping
/// floor(trim_fraction * n) samples at each end; the norm is
/// sqrt(spacing * sum of squares). Identical inputs give kMseFloorDb.
double MseDb(std::span<const double> x, std::span<const double> x_hat,
             double spacing, double trim_fraction);

/// Samples the ground-truth signal on the grid.
std::vector<double> SampleSignal(const BandlimitedSignal& signal,
                                 std::span<const double> times);

}  // namespace ciftem
