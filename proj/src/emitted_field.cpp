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

#include "ergoflux/emitted_field.hpp"

#include <cmath>

#include "ergoflux/errors.hpp"
#include "ergoflux/numerics.hpp"

namespace ergoflux {

OutputFieldState output_state(double theta) {
  Preparation{0.0, theta}.validate();
  return {{std::cos(0.5 * theta), 0.0}, {std::sin(0.5 * theta), 0.0}};
}

OutputFieldState output_state(const Preparation& prep) {
  prep.validate();
  if (prep.p != 0.0) throw DomainError("output_state: mixed preparations (p > 0) are not supported");
  return output_state(prep.theta);
}

std::complex<double> coherent_amplitude(const OutputFieldState& psi) { return std::conj(psi.c0) * psi.c1; }

double mean_photon_number(const OutputFieldState& psi) { return std::norm(psi.c1); }

double husimi_at(const OutputFieldState& psi, std::complex<double> alpha) {
  // <alpha|psi> = e^{-|alpha|^2/2} (c0 + c1 conj(alpha))
  return std::exp(-std::norm(alpha)) * std::norm(psi.c0 + psi.c1 * std::conj(alpha));
}

HusimiGrid husimi(const OutputFieldState& psi, const HusimiSpec& spec) {
  if (spec.re_count < 1 || spec.im_count < 1) throw DomainError("husimi: grid counts must be >= 1");
  if (!std::isfinite(spec.re_min) || !std::isfinite(spec.re_max) || !std::isfinite(spec.im_min) ||
      !std::isfinite(spec.im_max) || spec.re_max < spec.re_min || spec.im_max < spec.im_min)
    throw DomainError("husimi: grid bounds must be finite and ordered");
  HusimiGrid g;
  g.re = linspace(spec.re_min, spec.re_max, spec.re_count);
  g.im = linspace(spec.im_min, spec.im_max, spec.im_count);
  g.q.resize(spec.im_count, spec.re_count);
  for (Eigen::Index r = 0; r < g.im.size(); ++r)
    for (Eigen::Index c = 0; c < g.re.size(); ++c) g.q(r, c) = husimi_at(psi, {g.re[c], g.im[r]});
  return g;
}

}  // namespace ergoflux
