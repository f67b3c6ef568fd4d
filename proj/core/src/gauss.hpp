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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ciftem::detail {

/// Nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
QuadratureRule MakeGaussLegendre(std::size_t n);

const QuadratureRule& GaussLegendre16();
const QuadratureRule& GaussLegendre8();

/// 8-point Gauss-Legendre on [a, b].
template <typename F>
double Gauss8(const F& f, double a, double b) {
  const auto& rule = GaussLegendre8();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * acc;
}

namespace internal {
template <typename F>
double AdaptiveGaussStep(const F& f, double a, double b, double whole,
                         double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = Gauss8(f, a, mid);
  const double right = Gauss8(f, mid, b);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= tol) return refined;
  return AdaptiveGaussStep(f, a, mid, left, tol, depth - 1) +
         AdaptiveGaussStep(f, mid, b, right, tol, depth - 1);
}
}  // namespace internal

// The tolerance is relative to the integral of |f| so that sign-changing
// integrands do not chase rounding noise.
template <typename F>
double AdaptiveGauss(const F& f, double a, double b, double rel_tol,
                     int max_depth) {
  if (a == b) return 0.0;
  const double whole = Gauss8(f, a, b);
  const double magnitude =
      Gauss8([&f](double t) { return std::abs(f(t)); }, a, b);
  const double tol = std::max({rel_tol * std::abs(magnitude),
                               16.0 * 2.220446049250313e-16 * std::abs(magnitude),
                               1e-300});
  return internal::AdaptiveGaussStep(f, a, b, whole, tol, max_depth);
}

}  // namespace ciftem::detail
