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

#include "ergoflux/units.hpp"

#include <cmath>

#include "ergoflux/errors.hpp"

namespace ergoflux {

Units Units::make(double gamma, double omega0) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("Units: gamma must be > 0");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("Units: omega0 must be > 0");
  return Units{gamma, omega0};
}

double Units::energy_to_joules(double e_dimless) const { return e_dimless * kHbar * omega0; }

double Units::energy_to_dimensionless(double e_joules) const { return e_joules / (kHbar * omega0); }

}  // namespace ergoflux
