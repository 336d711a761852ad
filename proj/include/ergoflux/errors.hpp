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

#include <stdexcept>
#include <string>

namespace ergoflux {

/// Input outside the domain of the owning type or operation.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The integration grid is too coarse for the requested accuracy.
class IntegrationAccuracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or a failed numerical procedure.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A verification audit found a violated property.
class VerificationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergoflux
