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

#include "ciftem/decoder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ciftem/error.hpp"
#include "gauss.hpp"

namespace ciftem {
namespace {

// Below this |Omega t| the split-phase form loses digits to cancellation.
constexpr double kDirectKernelLimit = 0.5;

double Kernel(double omega, double t) {
  const double x = omega * t;
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

void ReconstructionConfig::Validate() const {
  Require(std::isfinite(omega) && omega > 0.0, ErrorCode::kInvalidArgument,
          "Omega must be positive");
  Require(grid_spacing > 0.0 && grid_spacing <= kPi / (4.0 * omega) * (1 + 1e-12),
          ErrorCode::kInvalidArgument,
          "grid spacing must lie in (0, pi/(4 Omega)]");
  Require(regularization > 0.0, ErrorCode::kInvalidArgument,
          "regularization must be positive");
  Require(quadrature_points >= 1, ErrorCode::kInvalidArgument,
          "need at least one quadrature point");
  Require(trim_fraction >= 0.0 && trim_fraction <= 0.25,
          ErrorCode::kInvalidArgument, "trim fraction must lie in [0, 0.25]");
}

ReconstructionConfig ReconstructionConfig::ForBand(double omega) {
  ReconstructionConfig config;
  config.omega = omega;
  config.grid_spacing = kPi / (16.0 * omega);
  return config;
}

ReconstructedSignal::ReconstructedSignal(double omega,
                                         std::vector<double> centers,
                                         std::vector<double> weights)
    : omega_(omega), centers_(std::move(centers)), weights_(std::move(weights)) {}

double ReconstructedSignal::Evaluate(double t) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    sum += weights_[k] * Kernel(omega_, t - centers_[k]);
  }
  return sum;
}

std::vector<double> ReconstructedSignal::EvaluateOn(
    std::span<const double> times) const {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(Evaluate(t));
  return out;
}

std::vector<double> FiringTimes(double t0, std::span<const double> intervals) {
  std::vector<double> times;
  times.reserve(intervals.size() + 1);
  times.push_back(t0);
  for (double dt : intervals) times.push_back(times.back() + dt);
  return times;
}

std::vector<double> UniformGrid(double begin, double end, double spacing) {
  Require(spacing > 0.0 && end >= begin, ErrorCode::kInvalidArgument,
          "invalid grid");
  const auto steps =
      static_cast<std::size_t>(std::floor((end - begin) / spacing + 1e-9));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = begin + static_cast<double>(i) * spacing;
  }
  return grid;
}

ReconstructedSignal Reconstruct(std::span<const double> firing_times,
                                const TemParams& params,
                                const ReconstructionConfig& config) {
  config.Validate();
  params.Validate();
  if (firing_times.size() < 3) {
    Fail(ErrorCode::kInsufficientData, "reconstruction needs at least 3 firings");
  }
  const std::size_t n = firing_times.size() - 1;
  const double omega = config.omega;

  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  std::vector<double> centers(n);
  double max_interval = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double interval = firing_times[i + 1] - firing_times[i];
    y[static_cast<Eigen::Index>(i)] =
        -params.bias * interval + params.kappa_delta();
    centers[i] = 0.5 * (firing_times[i] + firing_times[i + 1]);
    max_interval = std::max(max_interval, interval);
  }

  // A(i, k) = integral of g(t - s_k) over [t_i, t_{i+1}]. The phase is split
  // as sin(wt - ws) = sin(wt)cos(ws) - cos(wt)sin(ws) so the inner loop has
  // no transcendental calls; near-zero arguments use the direct kernel.
  const detail::QuadratureRule rule =
      config.quadrature_points == 16
          ? detail::GaussLegendre16()
          : detail::MakeGaussLegendre(config.quadrature_points);
  const std::size_t points = rule.nodes.size();
  const auto size = static_cast<Eigen::Index>(n);
  std::vector<double> center_sin(n), center_cos(n);
  for (std::size_t k = 0; k < n; ++k) {
    center_sin[k] = std::sin(omega * centers[k]);
    center_cos[k] = std::cos(omega * centers[k]);
  }
  Eigen::MatrixXd a(size, size);
  std::vector<double> nodes(points), weights(points), node_sin(points),
      node_cos(points);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = firing_times[i];
    const double hi = firing_times[i + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < points; ++q) {
      nodes[q] = mid + half * rule.nodes[q];
      weights[q] = half * rule.weights[q];
      node_sin[q] = std::sin(omega * nodes[q]);
      node_cos[q] = std::cos(omega * nodes[q]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t q = 0; q < points; ++q) {
        const double x = omega * (nodes[q] - centers[k]);
        if (std::abs(x) < kDirectKernelLimit) {
          acc += weights[q] * Kernel(omega, nodes[q] - centers[k]);
        } else {
          acc += weights[q] *
                 (node_sin[q] * center_cos[k] - node_cos[q] * center_sin[k]) / x;
        }
      }
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = acc;
    }
  }

  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(size, size);
  normal.selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
  normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
  const double ridge = config.regularization * normal.diagonal().mean();
  normal.diagonal().array() += ridge;
  const Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) {
    Fail(ErrorCode::kReconstructionFailure,
         "normal equations not positive definite (n=" + std::to_string(n) + ")");
  }
  const Eigen::VectorXd coeffs = llt.solve(a.transpose() * y);
  const double rcond = llt.rcond();
  if (!coeffs.allFinite() || !(rcond > 1e-16)) {
    Fail(ErrorCode::kReconstructionFailure,
         "ill-conditioned system, rcond=" + std::to_string(rcond));
  }

  ReconstructedSignal out(omega, std::move(centers),
                          std::vector<double>(coeffs.data(), coeffs.data() + n));
  out.diagnostics.residual_norm = (a * coeffs - y).norm();
  out.diagnostics.condition_estimate = 1.0 / rcond;
  out.diagnostics.regularization = ridge;
  out.diagnostics.density_satisfied = max_interval < kPi / omega;

  double begin = config.grid_begin;
  double end = config.grid_end;
  if (!(end > begin)) {
    begin = firing_times.front();
    end = firing_times.back();
  }
  out.grid_times = UniformGrid(begin, end, config.grid_spacing);
  out.values = out.EvaluateOn(out.grid_times);
  return out;
}

double MseDb(std::span<const double> x, std::span<const double> x_hat,
             double spacing, double trim_fraction) {
  Require(x.size() == x_hat.size(), ErrorCode::kInvalidArgument,
          "grids do not align");
  Require(spacing > 0.0, ErrorCode::kInvalidArgument, "spacing must be positive");
  Require(trim_fraction >= 0.0 && trim_fraction < 0.5,
          ErrorCode::kInvalidArgument, "trim fraction must lie in [0, 0.5)");
  const auto trim = static_cast<std::size_t>(
      std::floor(trim_fraction * static_cast<double>(x.size())));
  double sum = 0.0;
  for (std::size_t i = trim; i + trim < x.size(); ++i) {
    const double d = x[i] - x_hat[i];
    sum += d * d;
  }
  const double norm = std::sqrt(spacing * sum);
  if (norm == 0.0) return kMseFloorDb;
  return std::max(20.0 * std::log10(norm), kMseFloorDb);
}

std::vector<double> SampleSignal(const BandlimitedSignal& signal,
                                 std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(signal.Evaluate(t));
  return out;
}

}  // namespace ciftem
