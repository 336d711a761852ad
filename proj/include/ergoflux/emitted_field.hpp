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
#include <complex>

#include "ergoflux/dynamics.hpp"

namespace ergoflux {

/// Single temporal mode of light emitted spontaneously by a pure
/// preparation: c0 |0> + c1 |1>.
struct OutputFieldState {
  std::complex<double> c0{1.0, 0.0};
  std::complex<double> c1{0.0, 0.0};
};

/// cos(theta/2) |0> + sin(theta/2) |1>.
OutputFieldState output_state(double theta);
/// Only pure preparations (p = 0) are supported; p > 0 throws DomainError.
OutputFieldState output_state(const Preparation& prep);

/// beta = <psi| b |psi> = conj(c0) c1.
std::complex<double> coherent_amplitude(const OutputFieldState& psi);

/// <psi| b^dagger b |psi> = |c1|^2.
double mean_photon_number(const OutputFieldState& psi);

struct HusimiSpec {
  double re_min = -2.5;
  double re_max = 2.5;
  Eigen::Index re_count = 101;
  double im_min = -2.5;
  double im_max = 2.5;
  Eigen::Index im_count = 101;
};

/// Q(alpha) = <alpha|rho|alpha> (no 1/pi), rows indexed by Im(alpha) and
/// columns by Re(alpha).
struct HusimiGrid {
  Eigen::VectorXd re;
  Eigen::VectorXd im;
  Eigen::MatrixXd q;
};

double husimi_at(const OutputFieldState& psi, std::complex<double> alpha);
HusimiGrid husimi(const OutputFieldState& psi, const HusimiSpec& spec = {});

}  // namespace ergoflux
