// Copyright 2026 The telegate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Shared scalar type, tolerances and the exception hierarchy.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace telegate {

using Complex = std::complex<double>;

/// Equality / unitarity / norm checks.
inline constexpr double kTolerance = 1e-10;
/// A measurement outcome with probability below this is an impossible branch.
inline constexpr double kImpossibleBranch = 1e-12;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: length mismatches, bad permutations, bad specs.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A party touched a qubit it does not hold.
class LocalityViolation : public Error {
  public:
    using Error::Error;
};

/// A party read a classical bit that was never delivered to it.
class MissingMessage : public Error {
  public:
    using Error::Error;
};

/// A payload that must be an involution failed the certificate.
class InvolutionRequired : public Error {
  public:
    using Error::Error;
};

/// The protocol was handed a network of the wrong topology.
class TopologyMismatch : public Error {
  public:
    using Error::Error;
};

/// discard_qubit was asked to drop a qubit still entangled with the rest.
class EntangledDiscard : public Error {
  public:
    using Error::Error;
};

} // namespace telegate
