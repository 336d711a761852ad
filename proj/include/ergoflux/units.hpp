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

namespace ergoflux {

/// Physical scales of the qubit. All internal computations use gamma = 1,
/// times in 1/gamma and energies in hbar*omega0; these helpers convert at the
/// I/O boundary.
struct Units {
  double gamma = 1.0;   // decay rate, 1/s
  double omega0 = 1.0;  // transition angular frequency, rad/s

  static Units make(double gamma, double omega0);

  double time_to_physical(double t_dimless) const { return t_dimless / gamma; }
  double time_to_dimensionless(double t_physical) const { return t_physical * gamma; }
  double rate_to_physical(double r_dimless) const { return r_dimless * gamma; }
  double rate_to_dimensionless(double r_physical) const { return r_physical / gamma; }
  /// Energy in joules for a value in units of hbar*omega0.
  double energy_to_joules(double e_dimless) const;
  double energy_to_dimensionless(double e_joules) const;
};

inline constexpr double kHbar = 1.054571817e-34;  // J s

}  // namespace ergoflux
