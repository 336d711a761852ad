// Copyright 2026 The ergoflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>

namespace ergoflux {

/// Gauss-Legendre rule on [-1, 1], computed by Golub-Welsch.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussLegendre(int order);

  /// Integrate f over [a, b] with `panels` equal sub-intervals.
  template <typename F>
  double integrate(F&& f, double a, double b, int panels = 1) const {
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double lo = a + k * width;
      const double mid = lo + 0.5 * width;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + 0.5 * width * nodes[i]);
      total += 0.5 * width * acc;
    }
    return total;
  }
};

struct GoldenResult {
  double x;
  double value;
  double lo;  // final bracket
  double hi;
  int iterations;
};

/// Maximize a unimodal f on [a, b] until the bracket is narrower than
/// x_tol (absolute) or max_iter is reached.
GoldenResult golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                     double x_tol, int max_iter = 200);

/// Root of f on [a, b] where f(a) and f(b) have opposite signs (or one is 0).
double bisect_root(const std::function<double(double)>& f, double a, double b, int max_iter = 200);

Eigen::VectorXd linspace(double lo, double hi, Eigen::Index count);
Eigen::VectorXd logspace(double lo, double hi, Eigen::Index count);  // endpoints are values, not exponents

/// Worker count: hardware concurrency, capped by ERGOFLUX_THREADS when set.
unsigned worker_count();

/// Run body(i) for i in [0, n) across worker_count() threads. Each index is
/// visited exactly once; callers write results into pre-sized slots so the
/// assembly order does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ergoflux
