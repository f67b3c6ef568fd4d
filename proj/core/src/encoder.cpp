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

#include "ciftem/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ciftem/error.hpp"
#include "gauss.hpp"

namespace ciftem {
namespace {

// Locates the next firing after `start`: the root of
//   F(t) = b (t - start) + int_start^t x - kappa delta,
// which is increasing because b > |x|. Newton steps are kept inside a
// shrinking bracket and fall back to bisection when they leave it.
class CrossingSolver {
 public:
  CrossingSolver(const SignalModel& signal, const TemParams& params,
                 const TimeBounds& bounds, const EncoderOptions& options)
      : signal_(signal), params_(params), bounds_(bounds), options_(options) {}

  double Next(double start, double guess_interval) const {
    double lo = start + bounds_.dt_min * (1.0 - 1e-9);
    double hi = start + bounds_.dt_max * (1.0 + 1e-9);
    if (Residual(start, hi) < 0.0) {
      Fail(ErrorCode::kInternalConsistency,
           "no firing within dt_max of t=" + std::to_string(start));
    }
    if (Residual(start, lo) > 0.0) {
      Fail(ErrorCode::kInternalConsistency,
           "firing earlier than dt_min after t=" + std::to_string(start));
    }
    double t = std::clamp(start + guess_interval, lo, hi);
    for (int iter = 0; iter < 200; ++iter) {
      const double f = Residual(start, t);
      if (f == 0.0) return t;
      if (f < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      const double step = f / (params_.bias + signal_.evaluate(t));
      if (std::abs(step) < options_.time_tolerance) {
        return std::clamp(t - step, lo, hi);
      }
      t -= step;
      if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
      if (hi - lo < options_.time_tolerance) return t;
    }
    Fail(ErrorCode::kInternalConsistency, "crossing search did not converge");
  }

 private:
  double Residual(double start, double t) const {
    return params_.bias * (t - start) + Integral(start, t) -
           params_.kappa_delta();
  }

  double Integral(double a, double b) const {
    if (signal_.integrate) return signal_.integrate(a, b);
    return detail::AdaptiveGauss(signal_.evaluate, a, b,
                                 options_.integral_tolerance, kMaxDepth);
  }

  static constexpr int kMaxDepth = 12;
  const SignalModel& signal_;
  const TemParams& params_;
  TimeBounds bounds_;
  EncoderOptions options_;
};

}  // namespace

std::vector<double> FiringSequence::times() const {
  std::vector<double> out;
  out.reserve(intervals.size() + 1);
  double t = t0;
  out.push_back(t);
  for (double dt : intervals) {
    t += dt;
    out.push_back(t);
  }
  return out;
}

FiringSequence Encode(const BandlimitedSignal& signal, const TemParams& params,
                      double t_start, double t_end,
                      const EncoderOptions& options) {
  const SignalModel model{[&signal](double t) { return signal.Evaluate(t); },
                          nullptr, signal.spec().amplitude_bound};
  return Encode(model, params, t_start, t_end, options);
}

FiringSequence Encode(const SignalModel& signal, const TemParams& params,
                      double t_start, double t_end,
                      const EncoderOptions& options) {
  params.Validate();
  Require(static_cast<bool>(signal.evaluate), ErrorCode::kInvalidArgument,
          "signal model has no evaluate function");
  const double c = signal.amplitude_bound;
  const TimeBounds bounds = ComputeTimeBounds(params, c);
  Require(t_end - t_start >= bounds.dt_max, ErrorCode::kInvalidArgument,
          "encoding span shorter than dt_max");

  const CrossingSolver solver(signal, params, bounds, options);
  FiringSequence out;
  out.params = params;

  double guess = params.kappa_delta() / params.bias;
  out.t0 = solver.Next(t_start, guess);
  double last = out.t0;
  while (last <= t_end) {
    const double next = solver.Next(last, guess);
    if (next > t_end) break;
    const double interval = next - last;
    if (interval > bounds.dt_max * (1.0 + 1e-9) ||
        interval < bounds.dt_min * (1.0 - 1e-9)) {
      Fail(ErrorCode::kInternalConsistency,
           "interval " + std::to_string(interval) + " outside dynamic range");
    }
    out.intervals.push_back(interval);
    guess = interval;
    last = next;
  }
  return out;
}

MeasurementSeq Measurements(const FiringSequence& firings) {
  MeasurementSeq out;
  out.values.reserve(firings.intervals.size());
  const double b = firings.params.bias;
  const double kd = firings.params.kappa_delta();
  for (double interval : firings.intervals) {
    out.values.push_back(-b * interval + kd);
  }
  return out;
}

double OversamplingFactor(const FiringSequence& firings, double omega) {
  Require(firings.intervals.size() >= 1, ErrorCode::kInsufficientData,
          "oversampling factor needs at least 2 firings");
  Require(omega > 0.0, ErrorCode::kInvalidArgument, "Omega must be positive");
  const double elapsed = std::accumulate(firings.intervals.begin(),
                                         firings.intervals.end(), 0.0);
  const double rate = static_cast<double>(firings.intervals.size()) / elapsed;
  return rate / (omega / kPi);
}

}  // namespace ciftem
